#include "doctest.h"
#include "motext/ext.hpp"

#include <sstream>

using namespace motext;

namespace {

Resolution resolved(const char* name, int stem, int f, int cap = 0)
{
    Resolution r(MotivicProfile::preset(name, cap ? cap : stem + f));
    r.extend(stem, f);
    return r;
}

}  // namespace

TEST_SUITE("resolution")
{
    TEST_CASE("h0 tower over B")
    {
        auto r = resolved("B", 0, 3);
        for (int f = 0; f <= 3; ++f) {
            auto [lo, hi] = r.generators_in_degree(f, f);
            REQUIRE(hi - lo == 1);
            CHECK(r.generator(f, lo).w == 0);
        }
        ExtTable ext(r);
        for (int f = 0; f <= 3; ++f) {
            CHECK(ext.dim(0, f, 0) == 1);
            CHECK(ext.dim(0, f, 1) == 0);
            CHECK(ext.dim(0, f, -5) == 1);
        }
    }

    TEST_CASE("exterior algebra on tau_3 has polynomial Ext")
    {
        auto r = resolved("E-tau3", 42, 3);
        for (int f = 1; f <= 3; ++f) {
            REQUIRE(r.num_generators(f) >= 1);
            const auto& g = r.generator(f, 0);
            CHECK(g.s() == 14 * f);
            CHECK(g.w == 7 * f);
        }
        size_t above = 0;
        for (int f = 1; f <= 3; ++f)
            for (const auto& g : r.generators(f))
                if (g.s() <= 42)
                    ++above;
        CHECK(above == 3);
    }

    TEST_CASE("low Ext over the full algebra")
    {
        auto r = resolved("A", 8, 5);
        ExtTable ext(r);
        CHECK(ext.dim(1, 1, 1) == 1);   // h1
        CHECK(ext.dim(3, 1, 2) == 1);   // h2
        CHECK(ext.dim(7, 1, 4) == 1);   // h3
        CHECK(ext.dim(4, 4, 4) == 1);   // h1^4 survives motivically
        CHECK(ext.group(4, 4).tau_rank(4) == 0);
        CHECK(ext.dim(3, 3, 3) == 1);   // h1^3
        CHECK(ext.group(3, 3).tau_rank(3) == 1);  // tau h1^3 = h0^2 h2
        CHECK(ext.dim(8, 3, 5) == 1);   // c0
        CHECK(ext.dim(2, 1, 1) == 0);
    }

    TEST_CASE("Ext over B at named degrees")
    {
        auto r = resolved("B", 14, 2, 20);
        ExtTable ext(r);
        CHECK(ext.dim(14, 1, 7) == 1);
        const auto& g = ext.group(14, 1);
        CHECK(g.num_generators() == 1);
    }

    TEST_CASE("d squared vanishes")
    {
        for (const char* name : {"B", "A2", "A", "B-classical"}) {
            auto r = resolved(name, 20, 6);
            CHECK_MESSAGE(r.check_dd_zero().empty(), name);
        }
    }

    TEST_CASE("tau action composes")
    {
        auto r = resolved("A2", 24, 6);
        ExtTable ext(r);
        for (int s = 0; s <= 24; ++s)
            for (int f = 0; f <= 6; ++f) {
                const auto& g = ext.group(s, f);
                for (int w = g.w_low() - 1; w <= g.w_high() + 1; ++w) {
                    auto two = g.tau_matrix(w);
                    auto one = g.tau_matrix(w - 1);
                    // tau^2 through coordinates at w - 2
                    for (size_t i = 0; i < g.dim(w); ++i) {
                        auto direct = *g.coordinates(g.basis(w)[i], w - 2);
                        CHECK(one.left_apply(two.row(i)) == direct);
                    }
                }
            }
    }

    TEST_CASE("checkpoint round trip")
    {
        Resolution empty(MotivicProfile::preset("B", 30));
        std::stringstream a;
        empty.save(a);
        CHECK(Resolution::load(a).same_as(empty));

        auto r = resolved("B", 20, 5, 30);
        std::stringstream buf;
        r.save(buf);
        const std::string blob = buf.str();
        std::istringstream in(blob);
        auto back = Resolution::load(in);
        CHECK(back.same_as(r));
        std::ostringstream again;
        back.save(again);
        CHECK(again.str() == blob);

        std::istringstream cut(blob.substr(0, blob.size() / 2));
        CHECK_THROWS_AS(Resolution::load(cut), ResolutionError);
        std::string flipped = blob;
        flipped[flipped.size() / 2] ^= 1;
        std::istringstream bad(flipped);
        CHECK_THROWS_AS(Resolution::load(bad), ResolutionError);
        std::string ver = blob;
        ver[8] = 9;
        std::istringstream bv(ver);
        CHECK_THROWS_WITH_AS(Resolution::load(bv), doctest::Contains("version"), ResolutionError);
    }

    TEST_CASE("resume equals uninterrupted run")
    {
        auto full = resolved("B", 26, 7, 33);
        Resolution part(MotivicProfile::preset("B", 33));
        part.extend(20, 5);
        std::stringstream buf;
        part.save(buf);
        auto resumed = Resolution::load(buf);
        resumed.extend(26, 7);
        CHECK(resumed.same_as(full));

        Resolution steps(MotivicProfile::preset("B", 33));
        steps.extend(10, 7);
        steps.extend(26, 3);
        steps.extend(26, 7);
        CHECK(steps.same_as(full));
    }

    TEST_CASE("threads do not change the result")
    {
        Resolution a(MotivicProfile::preset("A2", 30)), b(MotivicProfile::preset("A2", 30));
        a.extend(24, 6, 1);
        b.extend(24, 6, 4);
        CHECK(a.same_as(b));
    }

    TEST_CASE("region errors")
    {
        auto r = resolved("B", 10, 3);
        ExtTable ext(r);
        CHECK_THROWS_AS(ext.dim(11, 3, 0), ResolutionError);
        CHECK_THROWS_AS(ext.dim(3, 4, 0), ResolutionError);
        Resolution small(MotivicProfile::preset("B", 10));
        CHECK_THROWS_AS(small.extend(10, 3), ResolutionError);
    }
}
