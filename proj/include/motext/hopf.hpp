#pragma once

// Quotients of the dual Steenrod algebra presented from profile data: the
// monomial basis, the product with tau_i^2 = tau xi_{i+1} rewriting, the
// coproduct, the dual Milnor-basis product, and exhaustive Hopf-axiom checks.

#include "motext/milnor.hpp"
#include "motext/profile.hpp"

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace motext {

/// tau_0^{e_0} tau_1^{e_1} ... xi_1^{r_1} xi_2^{r_2} ... tau^{tau_power}
struct Monomial {
    std::array<uint8_t, kMaxIndex> tau{};   // exponent of tau_i, 0 or 1
    std::array<uint16_t, kMaxIndex> xi{};   // exponent of xi_{i+1}
    int tau_power = 0;

    static Monomial one() { return {}; }
    static Monomial tau_gen(int i);
    static Monomial xi_gen(int i, int exponent = 1);  // xi_i, i >= 1

    Bidegree bidegree(Mode mode) const;
    bool is_one() const;
    /// Same monomial with tau_power 0.
    Monomial index() const;
    RSeq rseq() const;
    static Monomial from_rseq(const RSeq& r);
    std::string to_string() const;

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Homogeneous F2-combination of monomials (tau-powers carried per term).
struct DualElement {
    std::set<Monomial> terms;

    static DualElement of(const Monomial& m) { return DualElement{{m}}; }
    bool is_zero() const { return terms.empty(); }
    void toggle(const Monomial& m);
    DualElement& operator+=(const DualElement& o);
    std::string to_string() const;
    friend bool operator==(const DualElement&, const DualElement&) = default;
};

struct TensorTerm {
    Monomial left;   // tau_power 0
    Monomial right;  // tau_power 0
    int tau_power = 0;
    friend auto operator<=>(const TensorTerm&, const TensorTerm&) = default;
};

struct TensorElement {
    std::set<TensorTerm> terms;
    void toggle(const TensorTerm& t);
    bool is_zero() const { return terms.empty(); }
    std::string to_string() const;
    friend bool operator==(const TensorElement&, const TensorElement&) = default;
};

/// Milnor-basis element: pairs (dual of a tau-free monomial, tau-power).
struct MilnorTerm {
    Monomial index;
    int tau_power = 0;
    friend auto operator<=>(const MilnorTerm&, const MilnorTerm&) = default;
};

struct MilnorElement {
    std::set<MilnorTerm> terms;
    static MilnorElement unit() { return MilnorElement{{MilnorTerm{}}}; }
    static MilnorElement dual(const Monomial& m, int tau_power = 0) { return MilnorElement{{MilnorTerm{m.index(), tau_power}}}; }
    void toggle(const MilnorTerm& t);
    bool is_zero() const { return terms.empty(); }
    std::string to_string() const;
    friend bool operator==(const MilnorElement&, const MilnorElement&) = default;
};

/// Monomial basis (tau_power 0) of the quotient in bidegree (t, w); in
/// classical mode w is ignored.
std::vector<Monomial> basis_in_bidegree(const MotivicProfile& p, int t, int w);
/// All basis monomials of degree t, any weight.
std::vector<Monomial> basis_in_degree(const MotivicProfile& p, int t);
bool in_profile(const MotivicProfile& p, const Monomial& m);

/// Rewrites tau_i^2 and drops monomials outside the profile.
DualElement multiply_dual(const MotivicProfile& p, const DualElement& a, const DualElement& b);
Monomial multiply_monomials_unreduced(Mode mode, const Monomial& a, const Monomial& b, bool* killed_tau_square);

/// Coproduct of a basis monomial, reduced into the quotient on both sides.
TensorElement coproduct(const MotivicProfile& p, const Monomial& m);
/// Coproduct computed in the full algebra (degree-capped) and then projected
/// into p ⊗ p. Used for relations that are zero in the quotient.
TensorElement coproduct_projected(const MotivicProfile& p, const DualElement& x);

/// Product in the algebra dual to the quotient (Milnor basis).
MilnorElement milnor_multiply(const MotivicProfile& p, const MilnorElement& x, const MilnorElement& y);
/// Same product computed only from coproducts of basis monomials; an
/// independent route used to cross-check milnor_multiply.
MilnorElement milnor_multiply_by_pairing(const MotivicProfile& p, const MilnorElement& x, const MilnorElement& y);

/// Image under the inclusion of the dual of sub into the dual of ambient.
MilnorElement inclusion_image(const MotivicProfile& sub, const MotivicProfile& ambient, const MilnorElement& x);

struct HopfReport {
    bool pass = true;
    std::string law;      // which check failed
    std::string witness;  // first failing element
    size_t monomials_checked = 0;
};

HopfReport check_hopf_axioms(const MotivicProfile& p, int t_max);

/// True when tau_i is primitive in the quotient.
bool is_primitive(const MotivicProfile& p, const Monomial& m);

}  // namespace motext
