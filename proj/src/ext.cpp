#include "motext/ext.hpp"

#include <algorithm>
#include <stdexcept>

namespace motext {

using f2::BitMatrix;
using f2::BitVector;
using f2::Eliminator;

ExtGroup::ExtGroup(const Resolution& r, int s, int f) : s_(s), f_(f)
{
    r.require_ext(s, f);
    const int t = s + f;
    const uint32_t unit = r.algebra().unit();
    auto [lo, hi] = r.generators_in_degree(f, t);
    auto [olo, ohi] = r.generators_in_degree(f + 1, t);
    for (uint32_t g = lo; g < hi; ++g)
        weights_.push_back(r.generator(f, g).w);
    const size_t n = weights_.size();

    out_.assign(n, BitVector(ohi - olo));
    for (uint32_t h = olo; h < ohi; ++h)
        for (const auto& term : r.differential(f + 1, h))
            if (term.milnor == unit)
                out_[term.gen - lo].set(h - olo);

    if (f > 0) {
        auto [ilo, ihi] = r.generators_in_degree(f - 1, t);
        for (uint32_t g = ilo; g < ihi; ++g)
            in_weights_.push_back(r.generator(f - 1, g).w);
        in_.assign(ihi - ilo, BitVector(n));
        for (uint32_t g = lo; g < hi; ++g)
            for (const auto& term : r.differential(f, g))
                if (term.milnor == unit)
                    in_[term.gen - ilo].set(g - lo);
    }

    if (n == 0)
        return;
    wlo_ = *std::min_element(weights_.begin(), weights_.end());
    whi_ = *std::max_element(weights_.begin(), weights_.end());
    if (!in_weights_.empty())
        wlo_ = std::min(wlo_, *std::min_element(in_weights_.begin(), in_weights_.end()));
    cells_.resize(static_cast<size_t>(whi_ - wlo_ + 1));
}

const ExtGroup::Cell& ExtGroup::cell(int w) const
{
    std::lock_guard lock(mutex_);
    Cell& c = cells_[static_cast<size_t>(w - wlo_)];
    if (c.reducer)
        return c;
    const size_t n = weights_.size();

    std::vector<uint32_t> cols;
    for (uint32_t i = 0; i < n; ++i)
        if (weights_[i] >= w)
            cols.push_back(i);
    Eliminator z(out_.empty() ? 0 : out_[0].size(), cols.size());
    std::vector<BitVector> cocycles;
    for (uint32_t i : cols) {
        auto k = z.insert(out_[i]);
        if (!k)
            continue;
        BitVector v(n);
        for (size_t j = k->next_set(0); j != BitVector::npos; j = k->next_set(j + 1))
            v.set(cols[j]);
        cocycles.push_back(std::move(v));
    }

    std::vector<const BitVector*> bounds;
    for (uint32_t g = 0; g < in_.size(); ++g)
        if (in_weights_[g] >= w) {
            bounds.push_back(&in_[g]);
            c.bounder_gens.push_back(g);
        }
    auto red = std::make_shared<Eliminator>(n, bounds.size() + cocycles.size());
    for (const auto* b : bounds) {
        red->insert(*b);
        c.basis_slot.push_back(-1);
    }
    for (auto& v : cocycles) {
        if (red->insert(v)) {
            c.basis_slot.push_back(-1);
            continue;
        }
        c.basis_slot.push_back(static_cast<int32_t>(c.basis.size()));
        c.basis.push_back(std::move(v));
    }
    c.reducer = std::move(red);
    return c;
}

size_t ExtGroup::dim(int w) const
{
    if (absent(w))
        return 0;
    return cell(clamp(w)).basis.size();
}

const std::vector<BitVector>& ExtGroup::basis(int w) const
{
    static const std::vector<BitVector> empty;
    if (absent(w))
        return empty;
    return cell(clamp(w)).basis;
}

ExtClass ExtGroup::basis_class(int w, size_t i) const
{
    const auto& b = basis(w);
    if (i >= b.size())
        throw std::out_of_range("ExtGroup::basis_class: index out of range");
    return {s_, f_, w, b[i]};
}

bool ExtGroup::is_cocycle(const BitVector& c, int w) const
{
    if (c.size() != weights_.size())
        return false;
    BitVector d(out_.empty() ? 0 : out_[0].size());
    for (size_t i = c.next_set(0); i != BitVector::npos; i = c.next_set(i + 1)) {
        if (weights_[i] < w)
            return false;
        d ^= out_[i];
    }
    return d.is_zero();
}

std::optional<BitVector> ExtGroup::coordinates(const BitVector& c, int w) const
{
    if (!is_cocycle(c, w))
        return std::nullopt;
    if (absent(w))
        return BitVector(0);
    const Cell& cl = cell(clamp(w));
    auto combo = cl.reducer->solve(c);
    if (!combo)
        throw std::logic_error("ExtGroup: cocycle outside the span of boundaries and basis");
    BitVector coords(cl.basis.size());
    for (size_t j = combo->next_set(0); j != BitVector::npos; j = combo->next_set(j + 1))
        if (cl.basis_slot[j] >= 0)
            coords.set(static_cast<size_t>(cl.basis_slot[j]));
    return coords;
}

bool ExtGroup::is_zero(const BitVector& c, int w) const
{
    auto coords = coordinates(c, w);
    if (!coords)
        throw std::invalid_argument("ExtGroup::is_zero: not a cocycle of the stated weight");
    return coords->is_zero();
}

std::optional<BitVector> ExtGroup::cobound(const BitVector& c, int w) const
{
    if (c.size() != weights_.size())
        throw std::invalid_argument("ExtGroup::cobound: length mismatch");
    BitVector u(in_.size());
    if (c.is_zero())
        return u;
    if (absent(w))
        return std::nullopt;
    const Cell& cl = cell(clamp(w));
    auto combo = cl.reducer->solve(c);
    if (!combo)
        return std::nullopt;
    for (size_t j = combo->next_set(0); j != BitVector::npos; j = combo->next_set(j + 1)) {
        if (j >= cl.bounder_gens.size())
            return std::nullopt;
        u.set(cl.bounder_gens[j]);
    }
    return u;
}

BitVector ExtGroup::from_coordinates(const BitVector& coords, int w) const
{
    const auto& b = basis(w);
    if (coords.size() != b.size())
        throw std::invalid_argument("ExtGroup::from_coordinates: length mismatch");
    BitVector v(weights_.size());
    for (size_t i = coords.next_set(0); i != BitVector::npos; i = coords.next_set(i + 1))
        v ^= b[i];
    return v;
}

BitMatrix ExtGroup::tau_matrix(int w) const
{
    BitMatrix m(dim(w - 1));
    for (const auto& b : basis(w))
        m.push_row(*coordinates(b, w - 1));
    return m;
}

size_t ExtGroup::tau_rank(int w) const { return f2::rank(tau_matrix(w)); }

size_t ExtGroup::stable_rank(int w) const
{
    if (absent(w))
        return 0;
    BitMatrix m(dim(wlo_));
    for (const auto& b : basis(w))
        m.push_row(*coordinates(b, wlo_));
    return f2::rank(m);
}

// ---------------------------------------------------------------------------

const ExtGroup& ExtTable::group(int s, int f) const
{
    std::lock_guard lock(mutex_);
    auto& slot = groups_[{s, f}];
    if (!slot)
        slot = std::make_unique<ExtGroup>(*r_, s, f);
    return *slot;
}

size_t ExtTable::dim(int s, int f, int w) const { return group(s, f).dim(w); }

bool ExtTable::equal(const ExtClass& a, const ExtClass& b) const
{
    if (a.s != b.s || a.f != b.f || a.w != b.w)
        throw std::invalid_argument("ExtTable::equal: classes in different tridegrees");
    return is_zero(add(a, b));
}

ExtClass ExtTable::generator_class(int f, uint32_t g) const
{
    const Generator& gen = r_->generator(f, g);
    auto [lo, hi] = r_->generators_in_degree(f, gen.t);
    return {gen.t - f, f, gen.w, BitVector::unit(hi - lo, g - lo)};
}

ExtClass ExtTable::zero(int s, int f, int w) const
{
    return {s, f, w, BitVector(group(s, f).num_generators())};
}

ExtClass ExtTable::tau_times(const ExtClass& x, int k) const
{
    if (k < 0)
        throw std::invalid_argument("ExtTable::tau_times: negative power");
    ExtClass y = x;
    y.w -= k;
    return y;
}

ExtClass add(const ExtClass& a, const ExtClass& b)
{
    if (a.s != b.s || a.f != b.f || a.w != b.w || a.cocycle.size() != b.cocycle.size())
        throw std::invalid_argument("add: classes in different tridegrees");
    return {a.s, a.f, a.w, a.cocycle ^ b.cocycle};
}

}  // namespace motext
