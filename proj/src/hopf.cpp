#include "motext/hopf.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace motext {

Monomial Monomial::tau_gen(int i)
{
    Monomial m;
    m.tau[i] = 1;
    return m;
}

Monomial Monomial::xi_gen(int i, int exponent)
{
    if (i < 1 || i > kMaxIndex)
        throw std::out_of_range("xi index out of range");
    Monomial m;
    m.xi[i - 1] = static_cast<uint16_t>(exponent);
    return m;
}

Bidegree Monomial::bidegree(Mode mode) const
{
    Bidegree b;
    for (int i = 0; i < kMaxIndex; ++i) {
        Bidegree tb = tau_bidegree(i), xb = xi_bidegree(i + 1);
        b.t += tau[i] * tb.t + xi[i] * xb.t;
        b.w += tau[i] * tb.w + xi[i] * xb.w;
    }
    b.w -= tau_power;
    if (mode == Mode::classical)
        b.w = 0;
    return b;
}

bool Monomial::is_one() const
{
    return std::all_of(tau.begin(), tau.end(), [](uint8_t e) { return e == 0; }) &&
           std::all_of(xi.begin(), xi.end(), [](uint16_t e) { return e == 0; });
}

Monomial Monomial::index() const
{
    Monomial m = *this;
    m.tau_power = 0;
    return m;
}

RSeq Monomial::rseq() const
{
    RSeq r{};
    for (int i = 0; i < kMaxIndex; ++i)
        r[i] = static_cast<uint16_t>(tau[i] + 2 * xi[i]);
    return r;
}

Monomial Monomial::from_rseq(const RSeq& r)
{
    Monomial m;
    for (int i = 0; i < kMaxIndex; ++i) {
        m.tau[i] = static_cast<uint8_t>(r[i] & 1);
        m.xi[i] = static_cast<uint16_t>(r[i] >> 1);
    }
    return m;
}

std::string Monomial::to_string() const
{
    std::ostringstream os;
    bool any = false;
    auto sep = [&] {
        if (any)
            os << ' ';
        any = true;
    };
    if (tau_power) {
        sep();
        os << "tau";
        if (tau_power > 1)
            os << '^' << tau_power;
    }
    for (int i = 0; i < kMaxIndex; ++i)
        if (tau[i]) {
            sep();
            os << "tau_" << i;
        }
    for (int i = 0; i < kMaxIndex; ++i)
        if (xi[i]) {
            sep();
            os << "xi_" << (i + 1);
            if (xi[i] > 1)
                os << '^' << xi[i];
        }
    if (!any)
        os << '1';
    return os.str();
}

void DualElement::toggle(const Monomial& m)
{
    auto [it, inserted] = terms.insert(m);
    if (!inserted)
        terms.erase(it);
}

DualElement& DualElement::operator+=(const DualElement& o)
{
    for (const auto& m : o.terms)
        toggle(m);
    return *this;
}

std::string DualElement::to_string() const
{
    if (terms.empty())
        return "0";
    std::string s;
    for (const auto& m : terms)
        s += (s.empty() ? "" : " + ") + m.to_string();
    return s;
}

void TensorElement::toggle(const TensorTerm& t)
{
    auto [it, inserted] = terms.insert(t);
    if (!inserted)
        terms.erase(it);
}

std::string TensorElement::to_string() const
{
    if (terms.empty())
        return "0";
    std::string s;
    for (const auto& t : terms) {
        if (!s.empty())
            s += " + ";
        if (t.tau_power)
            s += "tau^" + std::to_string(t.tau_power) + " ";
        s += t.left.to_string() + "⊗" + t.right.to_string();
    }
    return s;
}

void MilnorElement::toggle(const MilnorTerm& t)
{
    auto [it, inserted] = terms.insert(t);
    if (!inserted)
        terms.erase(it);
}

std::string MilnorElement::to_string() const
{
    if (terms.empty())
        return "0";
    std::string s;
    for (const auto& t : terms) {
        if (!s.empty())
            s += " + ";
        if (t.tau_power)
            s += "tau^" + std::to_string(t.tau_power) + " ";
        s += "dual(" + t.index.to_string() + ")";
    }
    return s;
}

bool in_profile(const MotivicProfile& p, const Monomial& m)
{
    if (m.bidegree(p.mode).t > p.degree_cap)
        return false;
    return p.allows(m.rseq());
}

std::vector<Monomial> basis_in_degree(const MotivicProfile& p, int t)
{
    std::vector<Monomial> out;
    if (t < 0 || t > p.degree_cap)
        return out;
    auto alg = MilnorAlgebra::get(p);
    for (size_t i = 0; i < alg->dim(t); ++i)
        out.push_back(Monomial::from_rseq(alg->rseq(alg->id(t, i))));
    return out;
}

std::vector<Monomial> basis_in_bidegree(const MotivicProfile& p, int t, int w)
{
    std::vector<Monomial> out;
    for (const auto& m : basis_in_degree(p, t))
        if (p.mode == Mode::classical || m.bidegree(p.mode).w == w)
            out.push_back(m);
    return out;
}

Monomial multiply_monomials_unreduced(Mode mode, const Monomial& a, const Monomial& b, bool* killed_tau_square)
{
    if (killed_tau_square)
        *killed_tau_square = false;
    Monomial m;
    m.tau_power = a.tau_power + b.tau_power;
    for (int i = 0; i < kMaxIndex; ++i)
        m.xi[i] = static_cast<uint16_t>(a.xi[i] + b.xi[i]);
    for (int i = 0; i < kMaxIndex; ++i) {
        int e = a.tau[i] + b.tau[i];
        if (e == 2) {
            // tau_i^2 = tau xi_{i+1}
            m.xi[i] = static_cast<uint16_t>(m.xi[i] + 1);
            if (mode == Mode::motivic)
                m.tau_power += 1;
        }
        else {
            m.tau[i] = static_cast<uint8_t>(e);
        }
    }
    return m;
}

namespace {

// Reduced product of two monomials in the quotient, or nullopt when zero.
std::optional<Monomial> mono_mul(const MotivicProfile& p, const Monomial& a, const Monomial& b)
{
    bool overflow = false;
    Monomial m = multiply_monomials_unreduced(p.mode, a, b, &overflow);
    if (overflow || !in_profile(p, m))
        return std::nullopt;
    return m;
}

struct FlatTerm {
    Monomial left, right;
    int tau_power;
    friend auto operator<=>(const FlatTerm&, const FlatTerm&) = default;
};

struct Triple {
    Monomial a, b, c;
    int tau_power;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Sorts and removes terms that occur an even number of times.
template <class T>
void cancel_pairs(std::vector<T>& v)
{
    std::sort(v.begin(), v.end());
    size_t out = 0;
    for (size_t i = 0; i < v.size();) {
        size_t j = i;
        while (j < v.size() && v[j] == v[i])
            ++j;
        if ((j - i) & 1)
            v[out++] = v[i];
        i = j;
    }
    v.resize(out);
}

std::vector<FlatTerm> tensor_mul(const MotivicProfile& p, const std::vector<FlatTerm>& a, const std::vector<FlatTerm>& b)
{
    std::vector<FlatTerm> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) {
            auto l = mono_mul(p, x.left, y.left);
            if (!l)
                continue;
            auto r = mono_mul(p, x.right, y.right);
            if (!r)
                continue;
            FlatTerm t{l->index(), r->index(), x.tau_power + y.tau_power + l->tau_power + r->tau_power};
            out.push_back(t);
        }
    cancel_pairs(out);
    return out;
}

// Coproduct of a single generator in the quotient p.
std::vector<FlatTerm> generator_coproduct(const MotivicProfile& p, bool is_tau, int i)
{
    std::vector<FlatTerm> out;
    auto add = [&](const Monomial& l, const Monomial& r) {
        if (in_profile(p, l) && in_profile(p, r))
            out.push_back({l, r, 0});
    };
    auto xi_pow = [](int j, int e) {
        Monomial m;
        if (j > 0)
            m.xi[j - 1] = static_cast<uint16_t>(e);
        return m;
    };
    if (is_tau) {
        // tau_i -> tau_i ⊗ 1 + sum_k xi_{i-k}^{2^k} ⊗ tau_k
        add(Monomial::tau_gen(i), Monomial::one());
        for (int k = 0; k <= i; ++k)
            add(xi_pow(i - k, 1 << k), Monomial::tau_gen(k));
    }
    else {
        // xi_i -> sum_k xi_{i-k}^{2^k} ⊗ xi_k, xi_0 = 1
        for (int k = 0; k <= i; ++k)
            add(xi_pow(i - k, 1 << k), xi_pow(k, 1));
    }
    cancel_pairs(out);
    return out;
}

class CoproductEngine {
public:
    explicit CoproductEngine(const MotivicProfile& p) : p_(p) {}

    // Coproduct of a tau-free monomial, memoized.
    const std::vector<FlatTerm>& of(const Monomial& m0)
    {
        Monomial m = m0.index();
        auto it = memo_.find(m);
        if (it != memo_.end())
            return it->second;
        std::vector<FlatTerm> acc{{Monomial::one(), Monomial::one(), 0}};
        for (int i = 0; i < kMaxIndex; ++i)
            if (m.tau[i])
                acc = tensor_mul(p_, acc, generator_coproduct(p_, true, i));
        for (int i = 0; i < kMaxIndex; ++i) {
            // xi_{i+1}^e via its binary expansion; squaring is Frobenius on xi-only terms
            int e = m.xi[i];
            for (int bit = 0; e; ++bit, e >>= 1) {
                if (!(e & 1))
                    continue;
                std::vector<FlatTerm> sq;
                for (auto t : generator_coproduct(p_, false, i + 1)) {
                    for (int r = 0; r < kMaxIndex; ++r) {
                        t.left.xi[r] = static_cast<uint16_t>(t.left.xi[r] << bit);
                        t.right.xi[r] = static_cast<uint16_t>(t.right.xi[r] << bit);
                    }
                    if (in_profile(p_, t.left) && in_profile(p_, t.right))
                        sq.push_back(t);
                }
                acc = tensor_mul(p_, acc, sq);
            }
        }
        return memo_.emplace(m, std::move(acc)).first->second;
    }

private:
    MotivicProfile p_;
    std::map<Monomial, std::vector<FlatTerm>> memo_;
};

TensorElement to_tensor(const std::vector<FlatTerm>& v, int extra_tau)
{
    TensorElement t;
    for (const auto& f : v)
        t.toggle({f.left, f.right, f.tau_power + extra_tau});
    return t;
}

MotivicProfile full_profile(const MotivicProfile& p)
{
    MotivicProfile a = MotivicProfile::preset(p.mode == Mode::motivic ? "A" : "A-classical", p.degree_cap);
    return a;
}

}  // namespace

DualElement multiply_dual(const MotivicProfile& p, const DualElement& a, const DualElement& b)
{
    DualElement out;
    for (const auto& x : a.terms)
        for (const auto& y : b.terms)
            if (auto m = mono_mul(p, x, y))
                out.toggle(*m);
    return out;
}

TensorElement coproduct(const MotivicProfile& p, const Monomial& m)
{
    if (!in_profile(p, m))
        throw std::invalid_argument("coproduct: monomial outside the profile: " + m.to_string());
    CoproductEngine eng(p);
    return to_tensor(eng.of(m), m.tau_power);
}

TensorElement coproduct_projected(const MotivicProfile& p, const DualElement& x)
{
    MotivicProfile full = full_profile(p);
    CoproductEngine eng(full);
    std::vector<FlatTerm> all;
    for (const auto& m : x.terms) {
        if (m.bidegree(p.mode).t > p.degree_cap)
            throw std::out_of_range("coproduct_projected: degree above cap");
        for (auto t : eng.of(m)) {
            if (in_profile(p, t.left) && in_profile(p, t.right)) {
                t.tau_power += m.tau_power;
                all.push_back(t);
            }
        }
    }
    cancel_pairs(all);
    return to_tensor(all, 0);
}

MilnorElement milnor_multiply(const MotivicProfile& p, const MilnorElement& x, const MilnorElement& y)
{
    auto alg = MilnorAlgebra::get(p);
    MilnorElement out;
    for (const auto& a : x.terms) {
        auto ia = alg->find(a.index.rseq());
        if (!ia)
            throw std::invalid_argument("milnor_multiply: term outside the profile");
        for (const auto& b : y.terms) {
            auto ib = alg->find(b.index.rseq());
            if (!ib)
                throw std::invalid_argument("milnor_multiply: term outside the profile");
            for (uint32_t m : alg->multiply(*ia, *ib)) {
                int k = alg->weight(*ia) + alg->weight(*ib) - alg->weight(m);
                int tp = p.mode == Mode::motivic ? a.tau_power + b.tau_power + k : 0;
                out.toggle({Monomial::from_rseq(alg->rseq(m)), tp});
            }
        }
    }
    return out;
}

MilnorElement milnor_multiply_by_pairing(const MotivicProfile& p, const MilnorElement& x, const MilnorElement& y)
{
    CoproductEngine eng(p);
    MilnorElement out;
    for (const auto& a : x.terms)
        for (const auto& b : y.terms) {
            int t = a.index.bidegree(p.mode).t + b.index.bidegree(p.mode).t;
            for (const auto& m : basis_in_degree(p, t)) {
                // coefficient of dual(m) = coefficient of a ⊗ b in psi(m)
                for (const auto& term : eng.of(m)) {
                    if (term.left == a.index && term.right == b.index) {
                        int tp = p.mode == Mode::motivic ? a.tau_power + b.tau_power + term.tau_power : 0;
                        out.toggle({m, tp});
                    }
                }
            }
        }
    return out;
}

MilnorElement inclusion_image(const MotivicProfile& sub, const MotivicProfile& ambient, const MilnorElement& x)
{
    if (!sub.contained_in(ambient))
        throw std::invalid_argument("inclusion_image: sub profile is not contained in ambient");
    for (const auto& t : x.terms)
        if (!in_profile(sub, t.index))
            throw std::invalid_argument("inclusion_image: term is not a basis element of sub: " + t.index.to_string());
    return x;
}

bool is_primitive(const MotivicProfile& p, const Monomial& m)
{
    TensorElement expect;
    expect.toggle({m.index(), Monomial::one(), m.tau_power});
    expect.toggle({Monomial::one(), m.index(), m.tau_power});
    return coproduct(p, m) == expect;
}

HopfReport check_hopf_axioms(const MotivicProfile& p, int t_max)
{
    if (t_max > p.degree_cap)
        throw std::invalid_argument("check_hopf_axioms: t_max exceeds the degree cap");
    HopfReport report;
    auto fail = [&](std::string law, std::string witness) {
        report.pass = false;
        report.law = std::move(law);
        report.witness = std::move(witness);
        return report;
    };

    // Relations: generators of the kernel of A_* -> p must have coproduct
    // vanishing in p ⊗ p; tau_i^2 + tau xi_{i+1} must hold for the coproduct.
    MotivicProfile full = full_profile(p);
    CoproductEngine full_eng(full);
    for (int i = 0; i < kMaxIndex; ++i) {
        if (!p.tau_present(i) && tau_bidegree(i).t <= t_max) {
            Monomial r = Monomial::tau_gen(i);
            if (!coproduct_projected(p, DualElement::of(r)).is_zero())
                return fail("relation", r.to_string());
        }
        uint32_t h = p.xi_heights[i];
        if (h != kUnbounded && static_cast<long>(h) * xi_bidegree(i + 1).t <= t_max) {
            Monomial r = Monomial::xi_gen(i + 1, static_cast<int>(h));
            if (!coproduct_projected(p, DualElement::of(r)).is_zero())
                return fail("relation", r.to_string());
        }
        if (2 * tau_bidegree(i).t <= t_max && i + 1 < kMaxIndex) {
            auto psi_tau = generator_coproduct(full, true, i);
            auto sq = tensor_mul(full, psi_tau, psi_tau);
            std::vector<FlatTerm> rhs;
            for (auto t : generator_coproduct(full, false, i + 1)) {
                t.tau_power += p.mode == Mode::motivic ? 1 : 0;
                rhs.push_back(t);
            }
            cancel_pairs(rhs);
            if (sq != rhs)
                return fail("relation", "tau_" + std::to_string(i) + "^2 + tau xi_" + std::to_string(i + 1));
        }
    }

    CoproductEngine eng(p);
    std::vector<Monomial> gens;
    for (int i = 0; i < kMaxIndex; ++i) {
        if (p.tau_present(i) && tau_bidegree(i).t <= t_max)
            gens.push_back(Monomial::tau_gen(i));
        if (p.xi_heights[i] != 1 && xi_bidegree(i + 1).t <= t_max)
            gens.push_back(Monomial::xi_gen(i + 1));
    }

    for (int t = 0; t <= t_max; ++t) {
        for (const auto& m : basis_in_degree(p, t)) {
            ++report.monomials_checked;
            const auto& psi = eng.of(m);
            // counit laws
            std::vector<FlatTerm> left_counit, right_counit;
            for (const auto& term : psi) {
                if (term.left.is_one())
                    left_counit.push_back({term.right, Monomial::one(), term.tau_power});
                if (term.right.is_one())
                    right_counit.push_back({term.left, Monomial::one(), term.tau_power});
            }
            cancel_pairs(left_counit);
            cancel_pairs(right_counit);
            std::vector<FlatTerm> expect{{m, Monomial::one(), 0}};
            if (left_counit != expect || right_counit != expect)
                return fail("counit", m.to_string());

            // coassociativity, with triples flattened as (a, b ⊗ c)
            std::vector<Triple> l3, r3;
            for (const auto& term : psi) {
                for (const auto& inner : eng.of(term.left))
                    l3.push_back({inner.left, inner.right, term.right, term.tau_power + inner.tau_power});
                for (const auto& inner : eng.of(term.right))
                    r3.push_back({term.left, inner.left, inner.right, term.tau_power + inner.tau_power});
            }
            cancel_pairs(l3);
            cancel_pairs(r3);
            if (l3 != r3)
                return fail("coassociativity", m.to_string());

            // multiplicativity against each generator
            for (const auto& g : gens) {
                if (g.bidegree(p.mode).t + t > t_max)
                    continue;
                auto prod = mono_mul(p, g, m);
                std::vector<FlatTerm> direct;
                if (prod) {
                    for (auto term : eng.of(*prod)) {
                        term.tau_power += prod->tau_power;
                        direct.push_back(term);
                    }
                }
                cancel_pairs(direct);
                auto product = tensor_mul(p, eng.of(g), psi);
                if (direct != product)
                    return fail("multiplicativity", g.to_string() + " * " + m.to_string());
            }
        }
    }
    return report;
}

}  // namespace motext
