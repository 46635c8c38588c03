#include "motext/yoneda.hpp"

#include <algorithm>
#include <sstream>

namespace motext {

using f2::BitVector;

namespace {

std::string tri(int s, int f, int w)
{
    std::ostringstream os;
    os << "(" << s << "," << f << "," << w << ")";
    return os.str();
}

void add_into(ModuleElement& acc, const ModuleElement& x)
{
    if (x.empty())
        return;
    ModuleElement out;
    out.reserve(acc.size() + x.size());
    std::set_symmetric_difference(acc.begin(), acc.end(), x.begin(), x.end(), std::back_inserter(out));
    acc.swap(out);
}

ExtClass unit_class() { return {0, 0, 0, BitVector::unit(1, 0)}; }

ExtGroup group_for(const Resolution& r, int s, int f)
{
    return ExtGroup(r, s, f);
}

std::shared_ptr<const std::vector<int32_t>> shared_map(const MilnorAlgebra& src, const MilnorAlgebra& tgt)
{
    return std::make_shared<const std::vector<int32_t>>(milnor_map(src, tgt));
}

}  // namespace

std::vector<int32_t> milnor_map(const MilnorAlgebra& src, const MilnorAlgebra& tgt)
{
    std::vector<int32_t> out(src.size(), -1);
    for (uint32_t id = 0; id < src.size(); ++id) {
        if (&src == &tgt) {
            out[id] = static_cast<int32_t>(id);
            continue;
        }
        if (src.degree(id) > tgt.max_degree())
            continue;
        if (auto j = tgt.find(src.rseq(id)))
            out[id] = static_cast<int32_t>(*j);
    }
    return out;
}

// ---------------------------------------------------------------------------

ChainMap::ChainMap(const Resolution& src, const Resolution& tgt, int f0, int t0, int w0)
    : src_(&src), tgt_(&tgt), f0_(f0), t0_(t0), w0_(w0)
{
}

ModuleElement ChainMap::apply(int i, const ModuleElement& x) const
{
    ModuleElement acc;
    for (const auto& term : x) {
        int32_t m = map_milnor(term.milnor);
        if (m < 0)
            continue;
        ModuleElement v = value(i, term.gen);
        if (v.empty())
            continue;
        add_into(acc, tgt_->act(static_cast<uint32_t>(m), v));
    }
    return acc;
}

ExtClass ChainMap::compose(const ExtClass& y) const
{
    const int ty = y.t();
    const int f = f0_ + y.f;
    const int t = t0_ + ty;
    auto [ylo, yhi] = tgt_->generators_in_degree(y.f, ty);
    if (y.cocycle.size() != yhi - ylo)
        throw std::invalid_argument("compose: cochain length does not match the target resolution");
    auto [lo, hi] = src_->generators_in_degree(f, t);
    if (!src_->covers_step(f, t))
        throw ResolutionError("compose: source resolution does not reach filtration " + std::to_string(f) +
                              " in degree " + std::to_string(t));
    ExtClass out{t - f, f, w0_ + y.w, BitVector(hi - lo)};
    const uint32_t unit = tgt_->algebra().unit();
    for (uint32_t g = lo; g < hi; ++g) {
        bool bit = false;
        for (const auto& term : value(y.f, g))
            if (term.milnor == unit && term.gen >= ylo && term.gen < yhi && y.cocycle.get(term.gen - ylo))
                bit = !bit;
        if (bit)
            out.cocycle.set(g - lo);
    }
    return out;
}

// ---------------------------------------------------------------------------

LiftedMap::LiftedMap(const Resolution& src, const Resolution& tgt, int f0, int t0, int w0, Level0 level0,
                     Inhom inhom)
    : ChainMap(src, tgt, f0, t0, w0), level0_(std::move(level0)), inhom_(std::move(inhom))
{
    map_ = shared_map(src.algebra(), tgt.algebra());
}

void LiftedMap::perturb(uint64_t seed)
{
    std::lock_guard lock(mutex_);
    memo_.clear();
    rng_ = seed ? std::make_unique<std::mt19937_64>(seed) : nullptr;
}

ModuleElement LiftedMap::value(int i, uint32_t g) const
{
    std::lock_guard lock(mutex_);
    if (memo_.size() <= static_cast<size_t>(i))
        memo_.resize(static_cast<size_t>(i) + 1);
    auto it = memo_[i].find(g);
    if (it != memo_[i].end())
        return it->second;
    ModuleElement v = compute(i, g);
    memo_[i].emplace(g, v);
    return v;
}

ModuleElement LiftedMap::compute(int i, uint32_t g) const
{
    if (i == 0)
        return level0_(g);
    const Generator& gen = src_->generator(f0_ + i, g);
    const int t = gen.t - t0_;
    if (t < 0)
        return {};
    ModuleElement y = inhom_ ? inhom_(i - 1, g) : ModuleElement{};
    for (const auto& term : src_->differential(f0_ + i, g)) {
        int32_t m = map_milnor(term.milnor);
        if (m < 0)
            continue;
        ModuleElement v = value(i - 1, term.gen);
        if (!v.empty())
            add_into(y, tgt_->act(static_cast<uint32_t>(m), v));
    }
    ModuleElement x;
    if (!y.empty()) {
        if (!tgt_->covers_step(i, t))
            throw ResolutionError("lift needs the target resolved through filtration " + std::to_string(i) +
                                  " in degree " + std::to_string(t));
        auto elim = tgt_->image(i, t);
        auto combo = elim->solve(tgt_->to_vector(i - 1, t, y));
        if (!combo)
            throw YonedaError("lift obstructed at filtration " + std::to_string(i) + ", degree " + std::to_string(t) +
                              ": the map is not a chain map there");
        combo->resize(tgt_->slice(i, t).size());
        x = tgt_->from_vector(i, t, *combo);
    }
    if (rng_ && tgt_->covers_step(i + 1, t)) {
        const Slice& s = tgt_->slice(i + 1, t);
        const size_t limit = s.prefix(gen.w - w0_);
        if (limit > 0) {
            BitVector pick(s.size());
            for (size_t k = 0; k < limit; ++k)
                if ((*rng_)() & 1U)
                    pick.set(k);
            add_into(x, tgt_->apply_d(i + 1, tgt_->from_vector(i + 1, t, pick)));
        }
    }
    return x;
}

// ---------------------------------------------------------------------------

ComposedMap::ComposedMap(std::shared_ptr<const ChainMap> outer, std::shared_ptr<const ChainMap> inner)
    : ChainMap(inner->source(), outer->target(), outer->f0() + inner->f0(), outer->t0() + inner->t0(),
               outer->w0() + inner->w0()),
      outer_(std::move(outer)), inner_(std::move(inner))
{
    if (&inner_->target() != &outer_->source())
        throw std::invalid_argument("ComposedMap: resolutions do not match");
    auto table = std::make_shared<std::vector<int32_t>>(inner_->milnor_table()->size(), -1);
    for (size_t id = 0; id < table->size(); ++id) {
        int32_t m = inner_->map_milnor(static_cast<uint32_t>(id));
        if (m >= 0)
            (*table)[id] = outer_->map_milnor(static_cast<uint32_t>(m));
    }
    map_ = std::move(table);
}

ModuleElement ComposedMap::value(int i, uint32_t g) const
{
    return outer_->apply(i, inner_->value(outer_->f0() + i, g));
}

SumMap::SumMap(std::shared_ptr<const ChainMap> a, std::shared_ptr<const ChainMap> b)
    : ChainMap(a->source(), a->target(), a->f0(), a->t0(), a->w0()), a_(std::move(a)), b_(std::move(b))
{
    if (&a_->source() != &b_->source() || &a_->target() != &b_->target() || a_->f0() != b_->f0() ||
        a_->t0() != b_->t0() || a_->w0() != b_->w0())
        throw std::invalid_argument("SumMap: maps of different shape");
    if (*a_->milnor_table() != *b_->milnor_table())
        throw std::invalid_argument("SumMap: maps over different ring maps");
    map_ = a_->milnor_table();
}

ModuleElement SumMap::value(int i, uint32_t g) const
{
    ModuleElement v = a_->value(i, g);
    add_into(v, b_->value(i, g));
    return v;
}

// ---------------------------------------------------------------------------

namespace {

/// Level 0 sending generators of degree t0 in the support of c to g0.
LiftedMap::Level0 level0_from(const Resolution& r, int f, int t0, const BitVector& c)
{
    auto [lo, hi] = r.generators_in_degree(f, t0);
    (void)hi;
    const uint32_t first = lo;
    const uint32_t unit = 0;
    return [&r, f, t0, c, first, unit](uint32_t g) -> ModuleElement {
        if (r.generator(f, g).t != t0 || !c.get(g - first))
            return {};
        return {ModuleTerm{0, unit}};
    };
}

}  // namespace

std::shared_ptr<LiftedMap> lift_chain_map(const Resolution& r, const ExtClass& x)
{
    r.require_ext(x.s, x.f);
    auto [lo, hi] = r.generators_in_degree(x.f, x.t());
    if (x.cocycle.size() != hi - lo)
        throw std::invalid_argument("lift_chain_map: cocycle length does not match the resolution");
    return std::make_shared<LiftedMap>(r, r, x.f, x.t(), x.w, level0_from(r, x.f, x.t(), x.cocycle));
}

std::shared_ptr<LiftedMap> comparison_map(const Resolution& src, const Resolution& tgt)
{
    if (src.mode() != tgt.mode())
        throw std::invalid_argument("comparison_map: coefficient modes differ");
    return std::make_shared<LiftedMap>(src, tgt, 0, 0, 0, [](uint32_t) -> ModuleElement {
        return {ModuleTerm{0, 0}};
    });
}

std::shared_ptr<LiftedMap> null_homotopy(std::shared_ptr<const ChainMap> cm)
{
    const int n = cm->f0();
    if (n < 1)
        throw std::invalid_argument("null_homotopy: the map must raise filtration");
    const Resolution& src = cm->source();
    const int t0 = cm->t0(), w0 = cm->w0();
    ExtClass z = cm->compose(unit_class());
    ExtGroup grp = group_for(src, t0 - n, n);
    auto u = grp.cobound(z.cocycle, w0);
    if (!u)
        throw YonedaError("no null-homotopy: the induced class at " + tri(t0 - n, n, w0) + " is nonzero");
    auto h = std::make_shared<LiftedMap>(src, cm->target(), n - 1, t0, w0, level0_from(src, n - 1, t0, *u),
                                         [cm](int i, uint32_t g) { return cm->value(i, g); });
    return h;
}

ExtClass product(const Resolution& r, const ExtClass& x, const ExtClass& y)
{
    if (x.f < y.f)
        return lift_chain_map(r, x)->compose(y);
    return lift_chain_map(r, y)->compose(x);
}

ExtClass power(const Resolution& r, const ExtClass& x, int k)
{
    if (k < 0)
        throw std::invalid_argument("power: negative exponent");
    if (k == 0)
        return unit_class();
    auto lx = lift_chain_map(r, x);
    ExtClass acc = x;
    for (int j = 1; j < k; ++j)
        acc = lx->compose(acc);
    return acc;
}

// ---------------------------------------------------------------------------

namespace {

f2::EchelonSpace indeterminacy_space(const ExtGroup& g, const Coset& c)
{
    f2::BitMatrix m(g.dim(c.w()));
    for (const auto& e : c.indeterminacy)
        m.push_row(*g.coordinates(e.cocycle, c.w()));
    return f2::row_reduce(m);
}

}  // namespace

size_t indeterminacy_rank(const ExtTable& ext, const Coset& c)
{
    return indeterminacy_space(ext.group(c.s(), c.f()), c).rank();
}

bool coset_contains(const ExtTable& ext, const Coset& c, const ExtClass& x)
{
    const auto& g = ext.group(c.s(), c.f());
    auto diff = g.coordinates(add(x, c.representative).cocycle, c.w());
    if (!diff)
        return false;
    return indeterminacy_space(g, c).contains(*diff);
}

ExtClass canonical_representative(const ExtTable& ext, const Coset& c)
{
    const auto& g = ext.group(c.s(), c.f());
    auto coords = g.coordinates(c.representative.cocycle, c.w());
    auto reduced = indeterminacy_space(g, c).residual(*coords);
    return {c.s(), c.f(), c.w(), g.from_coordinates(reduced, c.w())};
}

Coset massey(const Resolution& r, const ExtClass& a, const ExtClass& b, const ExtClass& c,
             const MasseyOptions& opts)
{
    if (b.f < 1)
        throw std::invalid_argument("massey: the middle class must have positive filtration");
    auto C = lift_chain_map(r, c);
    auto B = lift_chain_map(r, b);
    if (opts.perturb_seed) {
        C->perturb(opts.perturb_seed);
        B->perturb(opts.perturb_seed * 0x9e3779b97f4a7c15ULL + 1);
    }
    auto BC = std::make_shared<ComposedMap>(B, C);
    std::shared_ptr<LiftedMap> H;
    try {
        H = null_homotopy(BC);
    }
    catch (const YonedaError&) {
        throw YonedaError("massey: bc is nonzero at " + tri(b.s + c.s, b.f + c.f, b.w + c.w));
    }
    if (opts.perturb_seed)
        H->perturb(opts.perturb_seed * 31 + 7);

    // V with δV = ab
    ExtClass ab = B->compose(a);
    const int fab = a.f + b.f;
    ExtGroup gab = group_for(r, ab.s, fab);
    auto v = gab.cobound(ab.cocycle, ab.w);
    if (!v)
        throw YonedaError("massey: ab is nonzero at " + tri(ab.s, fab, ab.w));
    ExtClass V{ab.t() - (fab - 1), fab - 1, ab.w, *v};
    if (opts.perturb_seed) {
        // add a cocycle: any element of Ext plus a coboundary
        std::mt19937_64 rng(opts.perturb_seed);
        ExtGroup gv = group_for(r, V.s, V.f);
        for (const auto& e : gv.basis(V.w))
            if (rng() & 1U)
                V.cocycle ^= e;
    }

    Coset out;
    out.representative = add(H->compose(a), C->compose(V));
    ExtGroup gres = group_for(r, out.s(), out.f());
    if (!gres.is_cocycle(out.representative.cocycle, out.w()))
        throw std::logic_error("massey: representative is not a cocycle");

    // a·Ext + Ext·c
    ExtGroup g1 = group_for(r, b.s + c.s + 1, b.f + c.f - 1);
    if (!g1.basis(b.w + c.w).empty()) {
        auto A = lift_chain_map(r, a);
        for (const auto& e : g1.basis(b.w + c.w))
            out.indeterminacy.push_back(A->compose({g1.s(), g1.f(), b.w + c.w, e}));
    }
    ExtGroup g2 = group_for(r, a.s + b.s + 1, fab - 1);
    for (const auto& e : g2.basis(a.w + b.w))
        out.indeterminacy.push_back(C->compose({g2.s(), g2.f(), a.w + b.w, e}));
    return out;
}

ExtClass toda_bracket_unit(const ChainMap& phi_ref, const ExtClass& a, const ExtClass& b)
{
    const Resolution& P = phi_ref.source();
    const Resolution& Q = phi_ref.target();
    // non-owning handle; phi outlives this call
    std::shared_ptr<const ChainMap> phi(&phi_ref, [](const ChainMap*) {});
    auto Bq = lift_chain_map(Q, b);

    const int n = a.f + b.f;
    ExtClass ab = Bq->compose(a);
    auto u = group_for(Q, ab.s, n).cobound(ab.cocycle, ab.w);
    if (!u)
        throw YonedaError("toda bracket: ab is nonzero at " + tri(ab.s, n, ab.w));
    ExtClass U{ab.s + 1, n - 1, ab.w, *u};

    ExtClass pa = phi->compose(a);
    auto v = group_for(P, pa.s, a.f).cobound(pa.cocycle, pa.w);
    if (!v)
        throw YonedaError("toda bracket: the image of a is nonzero at " + tri(pa.s, pa.f, pa.w));
    ExtClass V{pa.s + 1, a.f - 1, pa.w, *v};

    auto Bp = lift_chain_map(P, phi->compose(b));
    auto D = std::make_shared<SumMap>(std::make_shared<ComposedMap>(Bq, phi),
                                      std::make_shared<ComposedMap>(phi, Bp));
    auto K = null_homotopy(D);

    ExtClass z = add(add(phi->compose(U), Bp->compose(V)), K->compose(a));
    if (!group_for(P, z.s, z.f).is_cocycle(z.cocycle, z.w))
        throw std::logic_error("toda bracket: representative is not a cocycle");
    return z;
}

ChangeOfRings::ChangeOfRings(const Resolution& sub, const Resolution& amb) : sub_(&sub), amb_(&amb) {}

std::shared_ptr<const LiftedMap> ChangeOfRings::phi() const
{
    std::call_once(once_, [this] { phi_ = comparison_map(*sub_, *amb_); });
    return phi_;
}

Coset mahowald(const Resolution& r, const ExtClass& g2, const ExtClass& x, int k)
{
    if (k < 1)
        throw std::invalid_argument("mahowald: k must be positive");
    auto [lo, hi] = r.generators_in_degree(1, 1);
    if (hi - lo != 1)
        throw YonedaError("mahowald: h0 is not available in this resolution");
    ExtClass h0{0, 1, 0, BitVector::unit(1, 0)};
    ExtClass h03 = power(r, h0, 3);
    ExtGroup gx = group_for(r, x.s, x.f + 3);
    if (!gx.is_zero(product(r, h03, x).cocycle, x.w))
        throw YonedaError("mahowald: h0^3 x is nonzero");
    Coset cur = massey(r, g2, h03, x);
    for (int j = 1; j < k; ++j) {
        Coset next = massey(r, g2, h03, cur.representative);
        for (const auto& i : cur.indeterminacy) {
            Coset extra = massey(r, g2, h03, i);
            next.indeterminacy.push_back(extra.representative);
            for (auto& e : extra.indeterminacy)
                next.indeterminacy.push_back(std::move(e));
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace motext
