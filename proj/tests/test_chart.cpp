#include "doctest.h"
#include "motext/chart.hpp"
#include "motext/naming.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace motext;

namespace {

const Resolution& a2()
{
    static Resolution r = [] {
        Resolution x(MotivicProfile::preset("A2", 63));
        x.extend(48, 13);
        return x;
    }();
    return r;
}

}  // namespace

TEST_SUITE("chart")
{
    TEST_CASE("TSV round trip reproduces the dimension table")
    {
        ExtTable ext(a2());
        auto rows = chart_rows(ext, 30, 8);
        std::stringstream ss;
        write_tsv(ss, rows, "A2", 30, 8);
        auto back = read_tsv(ss);
        CHECK(back == rows);
        size_t total = 0, sum = 0;
        for (int s = 0; s <= 30; ++s)
            for (int f = 0; f <= 8; ++f) {
                const auto& g = ext.group(s, f);
                for (int w = g.w_low() - 3; w <= g.w_high() + 3; ++w)
                    CHECK(dim_from_rows(back, s, f, w) == ext.dim(s, f, w));
                for (int w = g.w_low(); w <= g.w_high(); ++w)
                    total += g.dim(w);
            }
        for (const auto& r : rows)
            sum += r.dim;
        CHECK(sum == total);
    }

    TEST_CASE("malformed TSV is rejected")
    {
        std::istringstream bad("s\tf\tw\n1\t2\t3\n");
        CHECK_THROWS(read_tsv(bad));
        std::istringstream short_row("s\tf\tw\tdim\ttau_rank\n1\t2\n");
        CHECK_THROWS(read_tsv(short_row));
    }

    TEST_CASE("E-tau3 is the v3 diagonal")
    {
        Resolution r(MotivicProfile::preset("E-tau3", 50));
        r.extend(45, 3);
        ExtTable ext(r);
        auto rows = chart_rows(ext, 45, 3);
        REQUIRE(rows.size() == 4);
        for (int k = 0; k <= 3; ++k) {
            CHECK(rows[k].s == 14 * k);
            CHECK(rows[k].f == k);
            CHECK(rows[k].w == 7 * k);
            CHECK(rows[k].dim == 1);
        }
    }

    TEST_CASE("SVG is deterministic and marks tau-torsion")
    {
        ExtTable e1(a2()), e2(a2());
        Palette pal = load_palette(default_palette_path());
        std::string a = render_svg(e1, 48, 13, pal, "A2");
        std::string b = render_svg(e2, 48, 13, pal, "A2");
        CHECK(a == b);
        CHECK(a.find("fill=\"" + pal.free + "\"") != std::string::npos);
        // h0 d0 e0^2 generates a tau^2-torsion summand
        Namer n(a2(), "A2");
        auto x = n.eval("h0 d0 e0^2");
        CHECK(x.s == 48);
        CHECK(x.f == 13);
        CHECK(a.find("<title>(48,13," + std::to_string(x.w) + ") tau-torsion</title>") != std::string::npos);
        CHECK(a.find("<title>(0,0,0)</title>") != std::string::npos);
    }

    TEST_CASE("palette file overrides colors")
    {
        const std::string path = (std::filesystem::temp_directory_path() / "motext_test_palette.json").string();
        {
            std::ofstream out(path);
            out << R"({"free": "#000001", "torsion": "#000002"})";
        }
        Palette p = load_palette(path);
        CHECK(p.free == "#000001");
        CHECK(p.torsion == "#000002");
        CHECK(p.background == Palette{}.background);
        CHECK_THROWS(load_palette("no-such-palette.json"));
        std::filesystem::remove(path);
    }
}
