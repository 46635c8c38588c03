#include "motext/cobar.hpp"

#include "motext/hopf.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <unordered_map>

namespace motext {

namespace {

using Key = unsigned __int128;
constexpr int kBits = 12;
constexpr int kMaxLength = 10;

struct Factor {
    int t = 0;
    int w = 0;
};

struct Split {
    uint32_t left, right;
};

struct Coalgebra {
    std::vector<Factor> basis;                      // reduced, sorted by (t, w)
    std::vector<std::vector<Split>> reduced;        // reduced coproduct per factor
    std::vector<std::vector<uint32_t>> by_degree;   // ids of degree t

    Coalgebra(const MotivicProfile& p, int t_max)
    {
        std::map<Monomial, uint32_t> id;
        std::vector<Monomial> mons;
        by_degree.resize(static_cast<size_t>(t_max) + 1);
        for (int t = 1; t <= t_max; ++t) {
            auto b = basis_in_degree(p, t);
            std::stable_sort(b.begin(), b.end(), [&](const Monomial& x, const Monomial& y) {
                return x.bidegree(p.mode).w < y.bidegree(p.mode).w;
            });
            for (auto& m : b) {
                const uint32_t k = static_cast<uint32_t>(mons.size());
                if (k + 1 >= (1u << kBits))
                    throw CobarResourceError("cobar: coalgebra basis too large for tensor keys");
                id[m] = k + 1;  // 0 is reserved
                by_degree[static_cast<size_t>(t)].push_back(k + 1);
                mons.push_back(m);
                basis.push_back({t, m.bidegree(p.mode).w});
            }
        }
        basis.insert(basis.begin(), Factor{});
        reduced.resize(basis.size());
        for (size_t k = 0; k < mons.size(); ++k)
            for (const auto& term : coproduct(p, mons[k]).terms) {
                if (term.left.is_one() || term.right.is_one())
                    continue;
                reduced[k + 1].push_back({id.at(term.left), id.at(term.right)});
            }
    }
};

uint32_t factor_at(Key k, int len, int i)
{
    return static_cast<uint32_t>(k >> (kBits * (len - 1 - i))) & ((1u << kBits) - 1);
}

class SliceBuilder {
public:
    SliceBuilder(const Coalgebra& c, int t_max) : c_(c)
    {
        // best[k][d]: largest weight of k factors of total degree d
        best_.assign(kMaxLength + 1, std::vector<int>(static_cast<size_t>(t_max) + 1, INT_MIN));
        worst_.assign(kMaxLength + 1, std::vector<int>(static_cast<size_t>(t_max) + 1, INT_MAX));
        count_.assign(kMaxLength + 1, std::vector<std::map<int, size_t>>(static_cast<size_t>(t_max) + 1));
        best_[0][0] = worst_[0][0] = 0;
        count_[0][0][0] = 1;
        for (int k = 1; k <= kMaxLength; ++k)
            for (int d = 1; d <= t_max; ++d)
                for (int e = 1; e <= d; ++e) {
                    if (best_[k - 1][d - e] == INT_MIN)
                        continue;
                    for (uint32_t a : c.by_degree[e]) {
                        const int wa = c.basis[a].w;
                        best_[k][d] = std::max(best_[k][d], best_[k - 1][d - e] + wa);
                        worst_[k][d] = std::min(worst_[k][d], worst_[k - 1][d - e] + wa);
                        for (auto [w, n] : count_[k - 1][d - e])
                            count_[k][d][w + wa] += n;
                    }
                }
    }

    bool empty(int len, int t) const { return best_[len][t] == INT_MIN; }
    int max_weight(int len, int t) const { return best_[len][t]; }
    int min_weight(int len, int t) const { return worst_[len][t]; }
    /// Number of tensors of length len, degree t and weight >= w.
    size_t count(int len, int t, int w) const
    {
        size_t n = 0;
        for (auto [v, k] : count_[len][t])
            if (v >= w)
                n += k;
        return n;
    }

    std::vector<Key> tensors(int len, int t, int w) const
    {
        std::vector<Key> out;
        if (len == 0) {
            if (t == 0 && w <= 0)
                out.push_back(0);
            return out;
        }
        walk(len, t, w, 0, 0, out);
        return out;
    }

private:
    void walk(int left, int t, int need, Key prefix, int depth, std::vector<Key>& out) const
    {
        if (left == 0) {
            if (t == 0 && need <= 0)
                out.push_back(prefix);
            return;
        }
        if (best_[left][t] == INT_MIN || best_[left][t] < need)
            return;
        for (int e = 1; e <= t - (left - 1); ++e)
            for (uint32_t a : c_.by_degree[e])
                walk(left - 1, t - e, need - c_.basis[a].w, (prefix << kBits) | a, depth + 1, out);
    }

    const Coalgebra& c_;
    std::vector<std::vector<int>> best_, worst_;
    std::vector<std::vector<std::map<int, size_t>>> count_;
};

struct RankResult {
    size_t rank = 0;
    std::vector<char> pivots;  // over the target slice
};

// Rank of d: C^len -> C^{len+1} with clearing of columns already known to
// be cocycles.
RankResult coboundary_rank(const Coalgebra& c, const std::vector<Key>& src, int len,
                           const std::vector<Key>& tgt, const std::vector<char>& cleared, size_t max_entries)
{
    RankResult res;
    res.pivots.assign(tgt.size(), 0);
    std::vector<int32_t> pivot_col(tgt.size(), -1);
    std::vector<std::vector<uint32_t>> stored;
    size_t entries = 0;
    std::vector<uint32_t> col, tmp;
    for (size_t j = 0; j < src.size(); ++j) {
        if (!cleared.empty() && cleared[j])
            continue;
        col.clear();
        const Key k = src[j];
        for (int i = 0; i < len; ++i) {
            const uint32_t a = factor_at(k, len, i);
            const int below = len - 1 - i;
            const Key hi = (k >> (kBits * (below + 1)));
            const Key lo = below ? (k & ((Key(1) << (kBits * below)) - 1)) : 0;
            for (const auto& sp : c.reduced[a]) {
                Key n = (hi << kBits) | sp.left;
                n = (n << kBits) | sp.right;
                n = (n << (kBits * below)) | lo;
                auto it = std::lower_bound(tgt.begin(), tgt.end(), n);
                if (it == tgt.end() || *it != n)
                    throw std::logic_error("cobar: coboundary leaves its weight slice");
                col.push_back(static_cast<uint32_t>(it - tgt.begin()));
            }
        }
        std::sort(col.begin(), col.end());
        size_t m = 0;
        for (size_t i = 0; i < col.size();) {
            if (i + 1 < col.size() && col[i] == col[i + 1]) {
                i += 2;
                continue;
            }
            col[m++] = col[i++];
        }
        col.resize(m);
        while (!col.empty()) {
            const int32_t p = pivot_col[col.back()];
            if (p < 0)
                break;
            const auto& other = stored[static_cast<size_t>(p)];
            tmp.clear();
            std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(), std::back_inserter(tmp));
            col.swap(tmp);
        }
        if (col.empty())
            continue;
        entries += col.size();
        if (entries > max_entries)
            throw CobarResourceError("cobar: elimination fill-in exceeds the resource bound");
        pivot_col[col.back()] = static_cast<int32_t>(stored.size());
        res.pivots[col.back()] = 1;
        stored.push_back(col);
        ++res.rank;
    }
    return res;
}

}  // namespace

size_t CobarTable::dim(int s, int f, int w) const
{
    const int t = s + f;
    if (s < 0 || f < 0)
        return 0;
    if (t > t_max_ || f > f_max_)
        throw CobarResourceError("cobar: (" + std::to_string(s) + "," + std::to_string(f) + ") outside the computed range");
    if (!covered(t, f))
        throw CobarResourceError("cobar: t=" + std::to_string(t) + " f=" + std::to_string(f) + " skipped by the resource bound");
    auto [lo, hi] = window_.at(t);
    if (w > hi)
        return 0;
    auto it = dims_.find({t, f, std::max(w, lo)});
    return it == dims_.end() ? 0 : it->second;
}

bool CobarTable::covered(int t, int f) const
{
    return std::find(skipped_.begin(), skipped_.end(), std::make_pair(t, f)) == skipped_.end();
}

CobarTable cobar_ext_dims(const MotivicProfile& p, const CobarOptions& opts)
{
    if (opts.t_max < 0 || opts.f_max < 0 || opts.f_max + 1 > kMaxLength)
        throw std::invalid_argument("cobar_ext_dims: bounds out of range");
    if (opts.t_max > p.degree_cap)
        throw std::invalid_argument("cobar_ext_dims: t_max exceeds the profile's degree cap");
    Coalgebra c(p, opts.t_max);
    SliceBuilder sb(c, opts.t_max);
    CobarTable out;
    out.t_max_ = opts.t_max;
    out.f_max_ = opts.f_max;
    const int L = opts.f_max + 1;

    for (int t = 0; t <= opts.t_max; ++t) {
        // weight window over all lengths that enter Ext^{<= f_max}
        int lo = INT_MAX, hi = INT_MIN;
        for (int len = 0; len <= L; ++len)
            if (!sb.empty(len, t)) {
                lo = std::min(lo, sb.min_weight(len, t));
                hi = std::max(hi, sb.max_weight(len, t));
            }
        if (lo > hi)
            lo = hi = 0;
        out.window_[t] = {lo, hi};

        int first_bad = L;  // lengths >= first_bad have unknown rank
        for (int w = hi; w >= lo; --w) {
            std::vector<size_t> rank(static_cast<size_t>(L) + 1, 0);
            std::vector<size_t> size(static_cast<size_t>(L) + 1, 0);
            std::vector<Key> cur = sb.tensors(0, t, w);
            size[0] = cur.size();
            std::vector<char> cleared;
            for (int len = 0; len < first_bad; ++len) {
                std::vector<Key> next;
                bool ok = true;
                try {
                    const size_t n = sb.count(len + 1, t, w);
                    if (n > opts.max_cells)
                        throw CobarResourceError("cobar: slice of " + std::to_string(n) +
                                                 " tensors exceeds the resource bound");
                    next = sb.tensors(len + 1, t, w);
                    out.largest_ = std::max(out.largest_, next.size());
                    auto r = coboundary_rank(c, cur, len, next, cleared, opts.max_cells * 16);
                    rank[static_cast<size_t>(len)] = r.rank;
                    cleared = std::move(r.pivots);
                } catch (const CobarResourceError&) {
                    if (!opts.partial)
                        throw;
                    ok = false;
                }
                if (!ok) {
                    first_bad = len;
                    break;
                }
                size[static_cast<size_t>(len) + 1] = next.size();
                cur = std::move(next);
            }
            for (int f = 0; f < std::min(first_bad, L); ++f) {
                const size_t below = f ? rank[static_cast<size_t>(f) - 1] : 0;
                const size_t d = size[static_cast<size_t>(f)] - rank[static_cast<size_t>(f)] - below;
                if (d)
                    out.dims_[{t, f, w}] = d;
            }
        }
        for (int f = first_bad; f <= opts.f_max; ++f)
            out.skipped_.push_back({t, f});
    }
    return out;
}

}  // namespace motext
