#pragma once

// Ext groups read off a resolution: homology of Hom(F_•, M2).
//
// A cochain of weight w on F_f in degree t assigns tau^(w_g - w) to each
// generator g of degree t with w_g >= w, so the cochains of weight w form the
// span C_w of those generators, and tau maps C_w into C_{w-1} by inclusion.
// The coboundary only sees the unit-index terms of d.

#include "motext/resolution.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace motext {

struct ExtClass {
    int s = 0;
    int f = 0;
    int w = 0;
    /// Coefficients on the generators of F_f in degree t, in generator order.
    f2::BitVector cocycle;

    int t() const { return s + f; }
};

/// Ext in a fixed (s, f) for every weight.
class ExtGroup {
public:
    ExtGroup(const Resolution& r, int s, int f);

    int s() const { return s_; }
    int f() const { return f_; }
    int t() const { return s_ + f_; }
    /// Cells exist for w in [w_low(), w_high()]; below w_low the groups are
    /// constant, above w_high they vanish.
    int w_low() const { return wlo_; }
    int w_high() const { return whi_; }
    size_t num_generators() const { return weights_.size(); }
    int generator_weight(size_t i) const { return weights_[i]; }

    size_t dim(int w) const;
    /// Chosen basis of cocycles representing Ext in weight w.
    const std::vector<f2::BitVector>& basis(int w) const;
    ExtClass basis_class(int w, size_t i) const;

    /// Whether c is a cocycle of weight w.
    bool is_cocycle(const f2::BitVector& c, int w) const;
    /// Coordinates of the class of c in basis(w); nullopt if c is not a
    /// cocycle of weight w.
    std::optional<f2::BitVector> coordinates(const f2::BitVector& c, int w) const;
    bool is_zero(const f2::BitVector& c, int w) const;
    /// A cochain u on F_{f-1} in degree t with weight w and δu = c, if any.
    std::optional<f2::BitVector> cobound(const f2::BitVector& c, int w) const;
    f2::BitVector from_coordinates(const f2::BitVector& coords, int w) const;

    /// Matrix of tau: Ext(w) -> Ext(w-1) in the chosen bases (rows = source).
    f2::BitMatrix tau_matrix(int w) const;
    size_t tau_rank(int w) const;
    /// Rank of the image of Ext(w) in the tau-stable group.
    size_t stable_rank(int w) const;

private:
    struct Cell {
        std::vector<f2::BitVector> basis;
        std::shared_ptr<f2::Eliminator> reducer;  // boundaries, then cocycles
        std::vector<int32_t> basis_slot;          // insertion index -> basis index or -1
        std::vector<uint32_t> bounder_gens;       // F_{f-1} generators behind the boundary rows
    };
    const Cell& cell(int w) const;
    int clamp(int w) const { return w < wlo_ ? wlo_ : w; }
    bool absent(int w) const { return weights_.empty() || w > whi_; }

    int s_, f_;
    int wlo_ = 0, whi_ = -1;
    std::vector<int> weights_;       // generators of F_f in degree t
    std::vector<int> in_weights_;    // generators of F_{f-1}
    std::vector<f2::BitVector> out_;  // δ of each F_f generator, over F_{f+1} generators
    std::vector<f2::BitVector> in_;   // δ of each F_{f-1} generator, over F_f generators
    mutable std::vector<Cell> cells_;
    mutable std::mutex mutex_;
};

/// Lazily computed Ext groups of one resolution.
class ExtTable {
public:
    explicit ExtTable(const Resolution& r) : r_(&r) {}
    const Resolution& resolution() const { return *r_; }
    const ExtGroup& group(int s, int f) const;
    size_t dim(int s, int f, int w) const;
    bool is_zero(const ExtClass& x) const { return group(x.s, x.f).is_zero(x.cocycle, x.w); }
    bool equal(const ExtClass& a, const ExtClass& b) const;
    /// Class of the dual of a generator (the functional that is 1 on g).
    ExtClass generator_class(int f, uint32_t g) const;
    ExtClass zero(int s, int f, int w) const;
    /// tau^k x.
    ExtClass tau_times(const ExtClass& x, int k = 1) const;

private:
    const Resolution* r_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<int, int>, std::unique_ptr<ExtGroup>> groups_;
};

ExtClass add(const ExtClass& a, const ExtClass& b);

}  // namespace motext
