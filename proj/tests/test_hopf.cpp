#include "doctest.h"
#include "motext/hopf.hpp"

#include <chrono>
#include <functional>
#include <map>

using namespace motext;

namespace {

MotivicProfile B(int cap = 60) { return MotivicProfile::preset("B", cap); }

Monomial mono(std::initializer_list<int> taus, std::initializer_list<std::pair<int, int>> xis)
{
    Monomial m;
    for (int i : taus)
        m.tau[i] = 1;
    for (auto [i, e] : xis)
        m.xi[i - 1] = static_cast<uint16_t>(e);
    return m;
}

// Brute-force enumeration of monomials of the quotient, independent of the
// Milnor basis tables.
std::vector<Monomial> brute_monomials(const MotivicProfile& p, int t)
{
    std::vector<Monomial> out;
    Monomial m;
    std::function<void(int, int)> rec = [&](int slot, int rem) {
        if (slot == 2 * kMaxIndex) {
            if (rem == 0)
                out.push_back(m);
            return;
        }
        int i = slot / 2;
        if (slot % 2 == 0) {
            rec(slot + 1, rem);
            if (p.tau_present(i) && tau_bidegree(i).t <= rem) {
                m.tau[i] = 1;
                rec(slot + 1, rem - tau_bidegree(i).t);
                m.tau[i] = 0;
            }
        }
        else {
            int d = xi_bidegree(i + 1).t;
            for (uint32_t e = 0; e < p.xi_heights[i] && static_cast<int>(e) * d <= rem; ++e) {
                m.xi[i] = static_cast<uint16_t>(e);
                rec(slot + 1, rem - static_cast<int>(e) * d);
            }
            m.xi[i] = 0;
        }
    };
    rec(0, t);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_SUITE("hopf")
{
    TEST_CASE("basis examples")
    {
        auto b = B();
        auto unit = basis_in_bidegree(b, 0, 0);
        REQUIRE(unit.size() == 1);
        CHECK(unit[0].is_one());
        auto one = basis_in_bidegree(b, 1, 0);
        REQUIRE(one.size() == 1);
        CHECK(one[0] == Monomial::tau_gen(0));
        size_t total = 0;
        for (int t = 0; t <= b.degree_cap; ++t)
            total += basis_in_degree(b, t).size();
        CHECK(total == 128);
    }

    TEST_CASE("basis matches brute-force enumeration")
    {
        for (const char* name : {"B", "A2", "E-tau3", "A"}) {
            auto p = MotivicProfile::preset(name, 40);
            for (int t = 0; t <= 40; ++t) {
                auto got = basis_in_degree(p, t);
                std::sort(got.begin(), got.end());
                CHECK(got == brute_monomials(p, t));
            }
        }
    }

    TEST_CASE("classical ranks match motivic ranks")
    {
        auto m = B(), c = MotivicProfile::preset("B-classical", 60);
        for (int t = 0; t <= 60; ++t)
            CHECK(basis_in_degree(m, t).size() == basis_in_degree(c, t).size());
    }

    TEST_CASE("dual products")
    {
        auto b = B();
        auto t0 = DualElement::of(Monomial::tau_gen(0));
        auto sq = multiply_dual(b, t0, t0);
        Monomial expect = Monomial::xi_gen(1);
        expect.tau_power = 1;
        CHECK(sq == DualElement::of(expect));
        CHECK(sq.terms.begin()->bidegree(Mode::motivic) == Bidegree{2, 0});

        auto t2 = DualElement::of(Monomial::tau_gen(2));
        CHECK(multiply_dual(b, t2, t2).is_zero());
        auto x2 = DualElement::of(Monomial::xi_gen(1, 2));
        CHECK(multiply_dual(b, x2, x2).is_zero());
        CHECK(!multiply_dual(MotivicProfile::preset("A", 60), x2, x2).is_zero());
    }

    TEST_CASE("coproduct examples")
    {
        auto b = B();
        TensorElement e;
        e.toggle({Monomial::tau_gen(1), Monomial::one(), 0});
        e.toggle({Monomial::xi_gen(1), Monomial::tau_gen(0), 0});
        e.toggle({Monomial::one(), Monomial::tau_gen(1), 0});
        CHECK(coproduct(b, Monomial::tau_gen(1)) == e);

        TensorElement x;
        x.toggle({Monomial::xi_gen(1), Monomial::one(), 0});
        x.toggle({Monomial::one(), Monomial::xi_gen(1), 0});
        CHECK(coproduct(b, Monomial::xi_gen(1)) == x);

        TensorElement t3;
        t3.toggle({Monomial::tau_gen(3), Monomial::one(), 0});
        t3.toggle({Monomial::one(), Monomial::tau_gen(3), 0});
        CHECK(coproduct(b, Monomial::tau_gen(3)) == t3);
        CHECK(is_primitive(b, Monomial::tau_gen(3)));
        CHECK_FALSE(is_primitive(MotivicProfile::preset("A", 60), Monomial::tau_gen(3)));
        CHECK_THROWS(coproduct(b, Monomial::tau_gen(4)));
    }

    TEST_CASE("milnor products")
    {
        auto b = B();
        auto u = MilnorElement::unit();
        auto x = MilnorElement::dual(mono({0, 2}, {{1, 1}}));
        CHECK(milnor_multiply(b, u, x) == x);
        CHECK(milnor_multiply(b, x, u) == x);
        auto t0 = MilnorElement::dual(Monomial::tau_gen(0));
        CHECK(milnor_multiply(b, t0, t0).is_zero());
        CHECK(milnor_multiply_by_pairing(b, t0, t0).is_zero());
        // Sq^1 Sq^2 = Sq^3 classically; motivically dual(tau_0)dual(xi_1) = dual(tau_0 xi_1)
        auto x1 = MilnorElement::dual(Monomial::xi_gen(1));
        CHECK(milnor_multiply(b, t0, x1) == MilnorElement::dual(mono({0}, {{1, 1}})));
    }

    TEST_CASE("milnor product equals pairing oracle")
    {
        for (const char* name : {"B", "A2", "A"}) {
            auto p = MotivicProfile::preset(name, 24);
            for (int ta = 0; ta <= 24; ++ta)
                for (int tb = 0; ta + tb <= 24; ++tb)
                    for (const auto& a : basis_in_degree(p, ta))
                        for (const auto& c : basis_in_degree(p, tb)) {
                            auto x = MilnorElement::dual(a), y = MilnorElement::dual(c);
                            auto fast = milnor_multiply(p, x, y);
                            auto slow = milnor_multiply_by_pairing(p, x, y);
                            if (fast != slow) {
                                FAIL_CHECK(name << ": " << a.to_string() << " * " << c.to_string() << " = "
                                                << fast.to_string() << " vs " << slow.to_string());
                                return;
                            }
                            // weight additivity; tau raises weight by one on this side
                            for (const auto& term : fast.terms) {
                                auto wt = term.index.bidegree(p.mode).w + term.tau_power;
                                CHECK(wt == a.bidegree(p.mode).w + c.bidegree(p.mode).w);
                            }
                        }
        }
    }

    TEST_CASE("associativity of B up to t = 20")
    {
        auto b = B();
        std::vector<Monomial> all;
        for (int t = 0; t <= 20; ++t)
            for (const auto& m : basis_in_degree(b, t))
                all.push_back(m);
        for (const auto& x : all)
            for (const auto& y : all)
                for (const auto& z : all) {
                    int t = x.bidegree(b.mode).t + y.bidegree(b.mode).t + z.bidegree(b.mode).t;
                    if (t > 20)
                        continue;
                    auto X = MilnorElement::dual(x), Y = MilnorElement::dual(y), Z = MilnorElement::dual(z);
                    CHECK(milnor_multiply(b, milnor_multiply(b, X, Y), Z) == milnor_multiply(b, X, milnor_multiply(b, Y, Z)));
                }
    }

    TEST_CASE("inclusion image")
    {
        auto b = B(), a = MotivicProfile::preset("A", 60);
        auto t3 = MilnorElement::dual(Monomial::tau_gen(3));
        CHECK(inclusion_image(b, a, t3) == t3);
        CHECK(inclusion_image(b, a, MilnorElement::unit()) == MilnorElement::unit());
        auto m = MilnorElement::dual(mono({}, {{1, 3}, {2, 1}}));
        CHECK(inclusion_image(b, a, m) == m);
        CHECK_THROWS(inclusion_image(b, a, MilnorElement::dual(Monomial::tau_gen(4))));
        CHECK_THROWS(inclusion_image(a, b, t3));
    }

    TEST_CASE("hopf axioms")
    {
        auto start = std::chrono::steady_clock::now();
        for (const char* name : {"B", "A2", "E-tau3", "B-classical", "A2-classical"}) {
            auto r = check_hopf_axioms(MotivicProfile::preset(name, 40), 30);
            CHECK_MESSAGE(r.pass, name << ": " << r.law << " " << r.witness);
        }
        auto r = check_hopf_axioms(MotivicProfile::preset("A", 40), 40);
        CHECK_MESSAGE(r.pass, r.law << " " << r.witness);
        MESSAGE("hopf checks took "
                << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s");
    }

    TEST_CASE("corrupted profile fails")
    {
        auto bad = MotivicProfile::from_heights(Mode::motivic, {2, 0}, {2, 1}, 30);
        auto r = check_hopf_axioms(bad, 30);
        CHECK_FALSE(r.pass);
        CHECK(r.law == "relation");
        CHECK(r.witness == "tau_1");
        CHECK_THROWS(MotivicProfile::from_heights(Mode::motivic, {0}, {2}, 30));
    }

    TEST_CASE("splitting of B")
    {
        auto b = B();
        auto b0 = MotivicProfile::from_heights(Mode::motivic, {2, 2, 2}, {4, 2}, 60);
        // B_* ≅ B0_* ⊗ E(tau_3) bidegree-wise
        std::map<Bidegree, int> lhs, rhs;
        for (int t = 0; t <= 60; ++t) {
            for (const auto& m : basis_in_degree(b, t))
                lhs[m.bidegree(Mode::motivic)]++;
            for (const auto& m : basis_in_degree(b0, t)) {
                auto d = m.bidegree(Mode::motivic);
                rhs[d]++;
                if (d.t + 15 <= 60)
                    rhs[d + tau_bidegree(3)]++;
            }
        }
        CHECK(lhs == rhs);
    }
}
