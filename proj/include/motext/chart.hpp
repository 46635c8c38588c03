#pragma once

// Charts of trigraded Ext: a TSV dimension table and an SVG Adams chart
// (stem rightward, filtration upward).
//
// TSV layout (tab separated, '#' lines are comments):
//   # motext chart v1 algebra=<name> max_stem=<n> max_f=<n>
//   s  f  w  dim  tau_rank
// One row per (s, f, w) with w in the group's weight window and dim > 0,
// plus a row at the bottom of the window for every nonzero group. tau_rank
// is the rank of tau from weight w to w - 1. Below the lowest row of an
// (s, f) the dimension stays at that row's value; weights with no row and
// above it have dimension 0.

#include "motext/ext.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace motext {

struct ChartRow {
    int s = 0, f = 0, w = 0;
    size_t dim = 0;
    size_t tau_rank = 0;
    friend bool operator==(const ChartRow&, const ChartRow&) = default;
};

std::vector<ChartRow> chart_rows(const ExtTable& ext, int max_stem, int max_f);
void write_tsv(std::ostream& out, const std::vector<ChartRow>& rows, const std::string& algebra, int max_stem,
               int max_f);
std::vector<ChartRow> read_tsv(std::istream& in);

/// Dimension at (s, f, w) implied by a row list (see the layout above).
size_t dim_from_rows(const std::vector<ChartRow>& rows, int s, int f, int w);

struct Palette {
    std::string background = "#ffffff";
    std::string grid = "#e4e4e4";
    std::string axis = "#404040";
    std::string label = "#202020";
    std::string free = "#1d4f91";
    std::string torsion = "#b5312b";
};
Palette load_palette(const std::string& path);
std::string default_palette_path();

/// One marker per generator of Ext as an M2-module: circles for tau-free
/// generators, squares for tau-torsion ones; hover titles carry (s,f,w).
std::string render_svg(const ExtTable& ext, int max_stem, int max_f, const Palette& palette, const std::string& title);

}  // namespace motext
