#include "doctest.h"
#include "motext/cobar.hpp"
#include "motext/ext.hpp"

using namespace motext;

TEST_SUITE("cobar")
{
    TEST_CASE("exterior algebra on tau_3")
    {
        CobarOptions o;
        o.t_max = 45;
        o.f_max = 3;
        auto tab = cobar_ext_dims(MotivicProfile::preset("E-tau3", 45), o);
        CHECK(tab.skipped().empty());
        for (int t = 0; t <= 45; ++t)
            for (int f = 0; f <= 3 && f <= t; ++f) {
                auto [lo, hi] = tab.weights(t);
                for (int w = lo - 1; w <= hi + 1; ++w) {
                    const bool on = t == 15 * f && w <= 7 * f;
                    CHECK(tab.dim(t - f, f, w) == (on ? 1u : 0u));
                }
            }
    }

    TEST_CASE("filtration zero")
    {
        CobarOptions o;
        o.t_max = 10;
        o.f_max = 1;
        auto tab = cobar_ext_dims(MotivicProfile::preset("B", 10), o);
        CHECK(tab.dim(0, 0, 0) == 1);
        CHECK(tab.dim(0, 0, -3) == 1);
        CHECK(tab.dim(0, 0, 1) == 0);
        for (int s = 1; s <= 10; ++s)
            CHECK(tab.dim(s, 0, 0) == 0);
    }

    TEST_CASE("agrees with the resolution in low degrees")
    {
        for (const char* name : {"B", "A2", "B-classical", "A"}) {
            const int T = 14, F = 5;
            CobarOptions o;
            o.t_max = T;
            o.f_max = F;
            auto p = MotivicProfile::preset(name, T + F + 2);
            auto tab = cobar_ext_dims(p, o);
            Resolution r(p);
            r.extend(T, F);
            ExtTable ext(r);
            for (int t = 0; t <= T; ++t)
                for (int f = 0; f <= F && f <= t; ++f) {
                    auto [lo, hi] = tab.weights(t);
                    for (int w = lo - 1; w <= hi + 1; ++w)
                        CHECK_MESSAGE(tab.dim(t - f, f, w) == ext.dim(t - f, f, w), name);
                }
        }
    }

    TEST_CASE("resource bound")
    {
        CobarOptions o;
        o.t_max = 16;
        o.f_max = 6;
        o.max_cells = 1000;
        auto p = MotivicProfile::preset("B", 20);
        CHECK_THROWS_AS(cobar_ext_dims(p, o), CobarResourceError);
        o.partial = true;
        auto tab = cobar_ext_dims(p, o);
        CHECK_FALSE(tab.skipped().empty());
        auto [t, f] = tab.skipped().front();
        CHECK_THROWS_AS(tab.dim(t - f, f, 0), CobarResourceError);
        CHECK(tab.covered(2, 1));
        CHECK(tab.dim(1, 1, 1) == 1);
    }
}
