#include "motext/milnor.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace motext {

namespace {

uint64_t pack(const RSeq& r)
{
    uint64_t key = 0;
    for (int i = 0; i < kMaxIndex; ++i)
        key = (key << 8) | (r[i] & 0xffU);
    return key;
}

// Appends the admissible sequences of degree t within the profile, sorted
// lexicographically on (r_1, r_2, ...).
void enumerate(const MotivicProfile& p, int t, std::vector<RSeq>& out)
{
    std::vector<RSeq> found;
    RSeq r{};
    std::function<void(int, int)> rec = [&](int i, int remaining) {
        if (i < 0) {
            if (remaining == 0 && p.allows(r))
                found.push_back(r);
            return;
        }
        const int d = (2 << i) - 1;
        for (int e = 0; e * d <= remaining; ++e) {
            RSeq probe{};
            probe[i] = static_cast<uint16_t>(e);
            if (!p.allows(probe))
                break;
            r[i] = probe[i];
            rec(i - 1, remaining - e * d);
        }
        r[i] = 0;
    };
    rec(kMaxIndex - 1, t);
    std::sort(found.begin(), found.end());
    out.insert(out.end(), found.begin(), found.end());
}

}  // namespace

std::vector<RSeq> milnor_product_classical(const RSeq& r, const RSeq& s)
{
    int rlen = kMaxIndex, slen = kMaxIndex;
    while (rlen > 0 && r[rlen - 1] == 0)
        --rlen;
    while (slen > 0 && s[slen - 1] == 0)
        --slen;
    const int rows = rlen + 1, cols = slen + 1, diags = rlen + slen;
    std::vector<int> m(static_cast<size_t>(rows * cols), 0);
    auto at = [&](int i, int j) -> int& { return m[static_cast<size_t>(i * cols + j)]; };
    for (int j = 1; j < cols; ++j)
        at(0, j) = s[j - 1];
    for (int i = 1; i < rows; ++i)
        at(i, 0) = r[i - 1];

    std::map<RSeq, int> result;
    std::vector<int> diagonal(static_cast<size_t>(std::max(diags, 1)), 0);
    bool found = true;
    while (found) {
        bool odd = true;
        for (int n = 1; n <= diags && odd; ++n) {
            int acc = 0, sum = 0;
            for (int i = std::max(0, n - cols + 1); i < std::min(n + 1, rows); ++i) {
                int x = at(i, n - i);
                if (acc & x) {
                    odd = false;  // multinomial coefficient is even
                    break;
                }
                acc |= x;
                sum += x;
            }
            diagonal[static_cast<size_t>(n - 1)] = sum;
        }
        if (odd) {
            RSeq t{};
            bool fits = true;
            for (int n = 0; n < diags; ++n) {
                if (diagonal[static_cast<size_t>(n)] == 0)
                    continue;
                if (n >= kMaxIndex || diagonal[static_cast<size_t>(n)] > 0xffff) {
                    fits = false;
                    break;
                }
                t[n] = static_cast<uint16_t>(diagonal[static_cast<size_t>(n)]);
            }
            if (!fits)
                throw std::out_of_range("Milnor product exceeds supported generator range");
            result[t] ^= 1;
        }
        // next matrix
        found = false;
        for (int i = 1; i < rows && !found; ++i) {
            int sum = at(i, 0);
            for (int j = 1; j < cols && !found; ++j) {
                if (sum >= (1 << j)) {
                    int above = 0;
                    for (int k = 0; k < i; ++k)
                        above += at(k, j);
                    if (above != 0) {
                        found = true;
                        for (int row = 1; row < i; ++row) {
                            at(row, 0) = r[row - 1];
                            for (int col = 1; col < cols; ++col) {
                                at(0, col) += at(row, col);
                                at(row, col) = 0;
                            }
                        }
                        for (int col = 1; col < j; ++col) {
                            at(0, col) += at(i, col);
                            at(i, col) = 0;
                        }
                        at(0, j) -= 1;
                        at(i, j) += 1;
                        at(i, 0) = sum - (1 << j);
                    }
                    else {
                        sum += at(i, j) << j;
                    }
                }
                else {
                    sum += at(i, j) << j;
                }
            }
        }
    }
    std::vector<RSeq> out;
    for (const auto& [seq, c] : result)
        if (c)
            out.push_back(seq);
    return out;
}

MilnorAlgebra::MilnorAlgebra(const MotivicProfile& profile) : profile_(profile)
{
    profile_.validate();
    if (profile_.degree_cap > 250)
        throw std::invalid_argument("degree cap above 250 is not supported");
    offsets_.assign(static_cast<size_t>(profile_.degree_cap) + 2, 0);
    for (int t = 0; t <= profile_.degree_cap; ++t) {
        offsets_[t] = static_cast<uint32_t>(elements_.size());
        enumerate(profile_, t, elements_);
    }
    offsets_[static_cast<size_t>(profile_.degree_cap) + 1] = static_cast<uint32_t>(elements_.size());
    degree_.resize(elements_.size());
    weight_.resize(elements_.size());
    for (uint32_t id = 0; id < elements_.size(); ++id) {
        degree_[id] = rseq_degree(elements_[id]);
        weight_[id] = rseq_weight(elements_[id], profile_.mode);
        lookup_.emplace(pack(elements_[id]), id);
    }
    identity_.resize(elements_.size());
    for (uint32_t id = 0; id < elements_.size(); ++id)
        identity_[id] = id;
    const size_t n = static_cast<size_t>(profile_.degree_cap) + 1;
    blocks_.resize(n * n);
}

size_t MilnorAlgebra::dim(int t) const
{
    if (t < 0 || t > profile_.degree_cap)
        return 0;
    return offsets_[t + 1] - offsets_[t];
}

std::optional<uint32_t> MilnorAlgebra::find(const RSeq& r) const
{
    auto it = lookup_.find(pack(r));
    if (it == lookup_.end())
        return std::nullopt;
    return it->second;
}

const MilnorAlgebra::Block& MilnorAlgebra::block(int ta, int tb) const
{
    if (ta + tb > profile_.degree_cap)
        throw std::out_of_range("product exceeds the degree cap of the algebra");
    const size_t n = static_cast<size_t>(profile_.degree_cap) + 1;
    std::lock_guard lock(mutex_);
    auto& slot = blocks_[static_cast<size_t>(ta) * n + static_cast<size_t>(tb)];
    if (slot)
        return *slot;
    auto b = std::make_unique<Block>();
    const size_t da = dim(ta), db = dim(tb);
    b->start.reserve(da * db + 1);
    for (size_t i = 0; i < da; ++i) {
        for (size_t j = 0; j < db; ++j) {
            b->start.push_back(static_cast<uint32_t>(b->data.size()));
            for (const RSeq& t : milnor_product_classical(elements_[id(ta, i)], elements_[id(tb, j)])) {
                auto found = lookup_.find(pack(t));
                // terms outside the profile vanish in the sub-Hopf algebra
                if (found != lookup_.end())
                    b->data.push_back(found->second);
            }
        }
    }
    b->start.push_back(static_cast<uint32_t>(b->data.size()));
    slot = std::move(b);
    return *slot;
}

std::span<const uint32_t> MilnorAlgebra::multiply(uint32_t a, uint32_t b) const
{
    if (a == 0)
        return {&identity_[b], 1};
    if (b == 0)
        return {&identity_[a], 1};
    const int ta = degree_[a], tb = degree_[b];
    const Block& blk = block(ta, tb);
    const size_t k = static_cast<size_t>(local(a)) * dim(tb) + local(b);
    return {blk.data.data() + blk.start[k], blk.start[k + 1] - blk.start[k]};
}

std::shared_ptr<const MilnorAlgebra> MilnorAlgebra::get(const MotivicProfile& profile)
{
    static std::mutex registry_mutex;
    static std::vector<std::shared_ptr<const MilnorAlgebra>> registry;
    std::lock_guard lock(registry_mutex);
    for (const auto& alg : registry)
        if (alg->profile() == profile)
            return alg;
    auto alg = std::make_shared<const MilnorAlgebra>(profile);
    registry.push_back(alg);
    return alg;
}

}  // namespace motext
