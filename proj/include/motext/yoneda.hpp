#pragma once

// Chain-level structure on Ext: lifted chain maps, null-homotopies, products,
// Massey products, restriction along a subalgebra inclusion and inflation
// along a quotient.
//
// A ChainMap of shift (f0, t0, w0) sends generators of F^src_{f0+i} to
// elements of F^tgt_i, lowering internal degree by t0 and weight by w0. The
// source algebra acts on the target through a map of Milnor bases (identity,
// an inclusion B -> A, or a quotient B -> A(2) that kills some elements).

#include "motext/ext.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <unordered_map>

namespace motext {

class YonedaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Milnor id of src mapped to the same-indexed element of tgt, or -1 when it
/// is not in tgt's profile.
std::vector<int32_t> milnor_map(const MilnorAlgebra& src, const MilnorAlgebra& tgt);

class ChainMap {
public:
    ChainMap(const Resolution& src, const Resolution& tgt, int f0, int t0, int w0);
    virtual ~ChainMap() = default;
    ChainMap(const ChainMap&) = delete;
    ChainMap& operator=(const ChainMap&) = delete;

    const Resolution& source() const { return *src_; }
    const Resolution& target() const { return *tgt_; }
    int f0() const { return f0_; }
    int t0() const { return t0_; }
    int w0() const { return w0_; }

    /// Image of generator g of F^src_{f0+i}, an element of F^tgt_i.
    virtual ModuleElement value(int i, uint32_t g) const = 0;
    /// Image of an element of F^src_{f0+i}.
    ModuleElement apply(int i, const ModuleElement& x) const;
    /// y∘(this) at level y.f: a cochain on F^src_{f0+y.f} of degree
    /// (t0 + y.t, w0 + y.w). y need not be a cocycle.
    ExtClass compose(const ExtClass& y) const;
    int32_t map_milnor(uint32_t id) const { return (*map_)[id]; }
    std::shared_ptr<const std::vector<int32_t>> milnor_table() const { return map_; }

protected:
    const Resolution* src_;
    const Resolution* tgt_;
    int f0_, t0_, w0_;
    std::shared_ptr<const std::vector<int32_t>> map_;
};

/// Solutions of d x = (inhomogeneous term) + (this map applied to d g), level
/// by level, memoized. Covers both chain-map lifts and null-homotopies.
class LiftedMap : public ChainMap {
public:
    using Level0 = std::function<ModuleElement(uint32_t g)>;
    using Inhom = std::function<ModuleElement(int i, uint32_t g)>;

    LiftedMap(const Resolution& src, const Resolution& tgt, int f0, int t0, int w0, Level0 level0,
              Inhom inhom = {});

    ModuleElement value(int i, uint32_t g) const override;

    /// Adds a random boundary to every solution (test hook for checking
    /// independence of choices).
    void perturb(uint64_t seed);

private:
    ModuleElement compute(int i, uint32_t g) const;

    Level0 level0_;
    Inhom inhom_;
    mutable std::recursive_mutex mutex_;
    mutable std::vector<std::unordered_map<uint32_t, ModuleElement>> memo_;
    std::unique_ptr<std::mt19937_64> rng_;
};

/// outer∘inner.
class ComposedMap : public ChainMap {
public:
    ComposedMap(std::shared_ptr<const ChainMap> outer, std::shared_ptr<const ChainMap> inner);
    ModuleElement value(int i, uint32_t g) const override;

private:
    std::shared_ptr<const ChainMap> outer_, inner_;
};

/// a + b for maps of equal shift between the same resolutions.
class SumMap : public ChainMap {
public:
    SumMap(std::shared_ptr<const ChainMap> a, std::shared_ptr<const ChainMap> b);
    ModuleElement value(int i, uint32_t g) const override;

private:
    std::shared_ptr<const ChainMap> a_, b_;
};

/// Chain map F_{f+i} -> F_i whose level 0 realizes the cocycle x.
std::shared_ptr<LiftedMap> lift_chain_map(const Resolution& r, const ExtClass& x);
/// Chain map src -> tgt over the identity of the ground module, for src's
/// algebra mapping to tgt's (inclusion or quotient).
std::shared_ptr<LiftedMap> comparison_map(const Resolution& src, const Resolution& tgt);
/// H with d H + H d = cm, starting from a cochain whose coboundary is the
/// cocycle realized by cm at level 0. Throws YonedaError when that cocycle is
/// not zero in Ext.
std::shared_ptr<LiftedMap> null_homotopy(std::shared_ptr<const ChainMap> cm);

/// Class of the composite x·y (both over r).
ExtClass product(const Resolution& r, const ExtClass& x, const ExtClass& y);
ExtClass power(const Resolution& r, const ExtClass& x, int k);

/// A Massey product value: representative plus a spanning set of the
/// indeterminacy, all in one tridegree.
struct Coset {
    ExtClass representative;
    std::vector<ExtClass> indeterminacy;

    int s() const { return representative.s; }
    int f() const { return representative.f; }
    int w() const { return representative.w; }
};

/// Rank of the indeterminacy inside Ext.
size_t indeterminacy_rank(const ExtTable& ext, const Coset& c);
/// Whether x lies in the coset.
bool coset_contains(const ExtTable& ext, const Coset& c, const ExtClass& x);
/// Representative reduced to a canonical element of the coset.
ExtClass canonical_representative(const ExtTable& ext, const Coset& c);

struct MasseyOptions {
    /// Nonzero: perturb every lift and homotopy with this seed.
    uint64_t perturb_seed = 0;
};

/// <a, b, c> over r. Throws YonedaError when ab or bc is nonzero.
Coset massey(const Resolution& r, const ExtClass& a, const ExtClass& b, const ExtClass& c,
             const MasseyOptions& opts = {});

/// The bracket <1, a, b> in Ext over sub, for a, b over amb with ab = 0 and
/// p*(a) = 0; phi is the comparison map sub -> amb.
ExtClass toda_bracket_unit(const ChainMap& phi, const ExtClass& a, const ExtClass& b);

/// Ext over amb -> Ext over sub induced by a Hopf algebra map between them,
/// with the comparison chain map built once.
class ChangeOfRings {
public:
    ChangeOfRings(const Resolution& sub, const Resolution& amb);
    const Resolution& sub() const { return *sub_; }
    const Resolution& amb() const { return *amb_; }
    ExtClass operator()(const ExtClass& x) const { return phi()->compose(x); }
    std::shared_ptr<const LiftedMap> phi() const;

private:
    const Resolution* sub_;
    const Resolution* amb_;
    mutable std::once_flag once_;
    mutable std::shared_ptr<LiftedMap> phi_;
};

/// M x = <g2, h0^3, x>, iterated k times on representatives; indeterminacy
/// is carried as the union of the stages' images.
Coset mahowald(const Resolution& r, const ExtClass& g2, const ExtClass& x, int k = 1);

}  // namespace motext
