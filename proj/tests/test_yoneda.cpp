#include "doctest.h"
#include "motext/naming.hpp"

#include <set>

using namespace motext;

namespace {

struct Rings {
    Resolution A{MotivicProfile::preset("A", 60)};
    Resolution B{MotivicProfile::preset("B", 60)};
    Resolution Q{MotivicProfile::preset("A2", 60)};
    Namer na{A, "A"};
    Namer nb{B, "B", &Q};
    Namer nq{Q, "A2"};
    ChangeOfRings p{B, A};

    Rings()
    {
        A.extend(48, 10);
        B.extend(48, 10);
        Q.extend(48, 10);
    }
};

Rings& rings()
{
    static Rings r;
    return r;
}

ExtClass unit() { return {0, 0, 0, f2::BitVector::unit(1, 0)}; }

}  // namespace

TEST_SUITE("yoneda")
{
    TEST_CASE("unit and h0 tower")
    {
        Resolution r(MotivicProfile::preset("B", 12));
        r.extend(2, 5);
        ExtTable ext(r);
        auto h0 = ext.generator_class(1, 0);
        CHECK(ext.equal(product(r, unit(), h0), h0));
        auto lifted = lift_chain_map(r, h0);
        ExtClass acc = h0;
        for (int k = 2; k <= 4; ++k) {
            acc = lifted->compose(acc);
            CHECK(acc.f == k);
            CHECK_FALSE(ext.is_zero(acc));
            CHECK(ext.equal(acc, power(r, h0, k)));
        }
        // level 0 realizes the class
        CHECK(lifted->value(0, 0) == ModuleElement{{0, r.algebra().unit()}});
    }

    TEST_CASE("relations in Ext_{A(2)}")
    {
        auto& n = rings().nq;
        const auto& ext = n.ext();
        CHECK(ext.equal(n.eval("e0^2"), n.eval("d0 g")));
        CHECK_FALSE(ext.is_zero(n.eval("e0^2")));
        CHECK(ext.equal(n.eval("h1^2 e0"), n.eval("c0 u")));
        CHECK(ext.is_zero(n.eval("h0 h1")));
        CHECK_FALSE(ext.is_zero(n.eval("h0 d0")));
        CHECK(ext.is_zero(n.eval("tau^2 h0 d0 e0")));
        CHECK_FALSE(ext.is_zero(n.eval("h0 d0 e0")));
    }

    TEST_CASE("products are associative and tau-linear")
    {
        for (const char* name : {"A2", "B"}) {
            Resolution& r = std::string(name) == "B" ? rings().B : rings().Q;
            ExtTable ext(r);
            std::vector<ExtClass> cls;
            for (int s = 0; s <= 15; ++s)
                for (int f = 1; f <= 3; ++f) {
                    const auto& g = ext.group(s, f);
                    for (int w = g.w_high(); w >= g.w_low(); --w)
                        if (g.dim(w)) {
                            for (size_t i = 0; i < g.dim(w); ++i)
                                cls.push_back(g.basis_class(w, i));
                            break;
                        }
                }
            int checked = 0;
            for (const auto& x : cls)
                for (const auto& y : cls)
                    for (const auto& z : cls) {
                        if (x.s + y.s + z.s > 30 || x.f + y.f + z.f > 10 || checked > 300)
                            continue;
                        ++checked;
                        auto l = product(r, product(r, x, y), z);
                        auto rr = product(r, x, product(r, y, z));
                        CHECK_MESSAGE(ext.equal(l, rr), name);
                    }
            CHECK(checked > 50);
            for (const auto& x : cls)
                for (const auto& y : cls) {
                    if (x.s + y.s > 30)
                        continue;
                    auto tx = ext.tau_times(x, 1);
                    CHECK(ext.equal(product(r, tx, y), ext.tau_times(product(r, x, y), 1)));
                    CHECK(ext.equal(product(r, x, y), product(r, y, x)));
                }
        }
    }

    TEST_CASE("null homotopies")
    {
        auto& R = rings();
        auto h0 = R.na.get("h0"), h1 = R.na.get("h1");
        auto cm = std::make_shared<ComposedMap>(lift_chain_map(R.A, h0), lift_chain_map(R.A, h1));
        auto H = null_homotopy(cm);
        CHECK(H->f0() == 1);
        auto zero = std::make_shared<SumMap>(lift_chain_map(R.A, h1), lift_chain_map(R.A, h1));
        auto Z = null_homotopy(zero);
        CHECK(Z->value(0, 0).empty());
        auto h2 = R.na.get("h2");
        auto nz = std::make_shared<ComposedMap>(lift_chain_map(R.A, h0), lift_chain_map(R.A, h2));
        CHECK_THROWS_AS(null_homotopy(nz), YonedaError);
    }

    TEST_CASE("restriction values")
    {
        auto& R = rings();
        CHECK(R.nb.describe(R.p(R.na.get("d0"))) == "d0");
        CHECK(R.nb.describe(R.p(R.na.get("e0"))) == "e0 + h1^3 v3");
        CHECK(R.nb.describe(R.p(R.na.get("h5"))) == "0");
        CHECK(R.nb.describe(R.p(R.na.get("g2"))) == "0");
        auto x = R.na.get("h1"), y = R.na.get("e0");
        CHECK(R.nb.ext().equal(R.p(product(R.A, x, y)), product(R.B, R.p(x), R.p(y))));
        CHECK(R.B.num_generators(4) > 0);
        CHECK(R.nb.ext().dim(44, 4, 24) == 0);
    }

    TEST_CASE("Mahowald operator on h1")
    {
        auto& R = rings();
        const auto& ea = R.na.ext();
        auto g2 = R.na.get("g2"), h1 = R.na.get("h1");
        auto h03 = R.na.eval("h0^3");
        CHECK(ea.is_zero(product(R.A, h03, g2)));
        Coset m = mahowald(R.A, g2, h1);
        CHECK(m.s() == 46);
        CHECK(m.f() == 7);
        CHECK(m.w() == 25);
        CHECK_FALSE(ea.is_zero(m.representative));
        for (const auto& i : m.indeterminacy)
            CHECK(R.nb.ext().is_zero(R.p(i)));
        auto lhs = R.p(m.representative);
        auto rhs = product(R.B, R.nb.eval("e0 v3^2 + h1^3 v3^3"), R.p(h1));
        CHECK(R.nb.ext().equal(lhs, rhs));
        CHECK(R.nb.describe(lhs) == "h1 e0 v3^2 + h1^4 v3^3");

        Coset m2 = mahowald(R.A, g2, R.na.get("h2"));
        CHECK_FALSE(ea.is_zero(m2.representative));
        CHECK_THROWS_AS(mahowald(R.A, g2, R.na.get("h0")), YonedaError);
    }

    TEST_CASE("bracket with zero value and precondition errors")
    {
        auto& R = rings();
        auto g2 = R.na.get("g2"), h03 = R.na.eval("h0^3");
        Coset z = massey(R.A, h03, g2, h03);
        CHECK(coset_contains(R.na.ext(), z, R.na.ext().zero(z.s(), z.f(), z.w())));
        CHECK_THROWS_AS(massey(R.A, R.na.get("h0"), R.na.get("h2"), R.na.get("h0")), YonedaError);
    }

    TEST_CASE("bracket values do not depend on choices")
    {
        auto& R = rings();
        auto g2 = R.na.get("g2"), h03 = R.na.eval("h0^3");
        for (const char* x : {"h1", "h2"}) {
            Coset base = massey(R.A, g2, h03, R.na.get(x));
            for (uint64_t seed : {1u, 2u, 3u}) {
                Coset other = massey(R.A, g2, h03, R.na.get(x), {seed});
                CHECK(coset_contains(R.na.ext(), base, other.representative));
            }
        }
        auto h0 = R.na.get("h0"), h1 = R.na.get("h1");
        Coset small = massey(R.A, h0, h1, h0);
        CHECK(coset_contains(R.na.ext(), small, R.na.eval("tau h1^2")));
        CHECK_FALSE(R.na.ext().is_zero(small.representative));
        for (uint64_t seed : {5u, 6u})
            CHECK(coset_contains(R.na.ext(), small, massey(R.A, h0, h1, h0, {seed}).representative));
    }

    TEST_CASE("shuffling")
    {
        auto& R = rings();
        const auto& eb = R.nb.ext();
        auto g2 = R.na.get("g2"), h03 = R.na.eval("h0^3");
        auto z = toda_bracket_unit(*R.p.phi(), g2, h03);
        CHECK(z.s == 45);
        CHECK(z.f == 6);
        CHECK(z.w == 24);
        CHECK(R.nb.describe(z) == "e0 v3^2 + h1^3 v3^3");
        CHECK(eb.group(45, 6).dim(24) == 2);
        for (const char* x : {"h1", "h2"}) {
            auto px = R.p(R.na.get(x));
            Coset m = mahowald(R.A, g2, R.na.get(x));
            CHECK(eb.equal(R.p(m.representative), product(R.B, z, px)));
        }

        // <h0^2 g2, h0, h1> ⊆ <h0 g2, h0^2, h1> ⊆ <g2, h0^3, h1>
        auto h0 = R.na.get("h0"), h1 = R.na.get("h1");
        Coset c1 = massey(R.A, R.na.eval("h0^2 g2"), h0, h1);
        Coset c2 = massey(R.A, R.na.eval("h0 g2"), R.na.eval("h0^2"), h1);
        Coset c3 = massey(R.A, g2, h03, h1);
        const auto& ea = R.na.ext();
        CHECK(coset_contains(ea, c2, c1.representative));
        CHECK(coset_contains(ea, c3, c2.representative));
        for (const auto& i : c1.indeterminacy)
            CHECK(coset_contains(ea, c2, add(c2.representative, i)));
        for (const auto& i : c2.indeterminacy)
            CHECK(coset_contains(ea, c3, add(c3.representative, i)));
    }

    TEST_CASE("naming")
    {
        auto& R = rings();
        CHECK(R.nb.describe(R.nb.get("e0")) == "e0");
        CHECK(R.nb.describe(R.nb.eval("e0 + h1^3 v3")) == "e0 + h1^3 v3");
        CHECK(R.nq.describe(R.nq.eval("h1^2 e0")).size() > 0);
        CHECK_THROWS_AS(R.na.get("nonsense"), NamingError);
        CHECK_THROWS_AS(R.na.eval("h1^x"), NamingError);
        std::set<std::pair<std::string, std::string>> seen;
        for (const auto& e : naming_table())
            CHECK(seen.insert({e.ring, e.name}).second);
        auto taug = R.na.get("taug");
        CHECK(R.nb.describe(R.p(taug)) == "tau g");
    }
}
