#include "motext/chart.hpp"

#include "json.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifndef MOTEXT_DATA_DIR
#define MOTEXT_DATA_DIR "data"
#endif

namespace motext {

std::vector<ChartRow> chart_rows(const ExtTable& ext, int max_stem, int max_f)
{
    std::vector<ChartRow> rows;
    for (int s = 0; s <= max_stem; ++s)
        for (int f = 0; f <= max_f; ++f) {
            ext.resolution().require_ext(s, f);
            const auto& g = ext.group(s, f);
            if (g.num_generators() == 0)
                continue;
            bool any = false;
            for (int w = g.w_low(); w <= g.w_high(); ++w)
                any = any || g.dim(w) > 0;
            if (!any)
                continue;
            for (int w = g.w_low(); w <= g.w_high(); ++w)
                if (w == g.w_low() || g.dim(w) > 0)
                    rows.push_back({s, f, w, g.dim(w), g.tau_rank(w)});
        }
    return rows;
}

void write_tsv(std::ostream& out, const std::vector<ChartRow>& rows, const std::string& algebra, int max_stem,
               int max_f)
{
    out << "# motext chart v1 algebra=" << algebra << " max_stem=" << max_stem << " max_f=" << max_f << '\n';
    out << "s\tf\tw\tdim\ttau_rank\n";
    for (const auto& r : rows)
        out << r.s << '\t' << r.f << '\t' << r.w << '\t' << r.dim << '\t' << r.tau_rank << '\n';
}

std::vector<ChartRow> read_tsv(std::istream& in)
{
    std::vector<ChartRow> rows;
    std::string line;
    bool header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        if (!header) {
            if (line != "s\tf\tw\tdim\ttau_rank")
                throw std::runtime_error(fmt::format("line {}: unexpected header", lineno));
            header = true;
            continue;
        }
        std::istringstream ls(line);
        ChartRow r;
        if (!(ls >> r.s >> r.f >> r.w >> r.dim >> r.tau_rank))
            throw std::runtime_error(fmt::format("line {}: malformed row", lineno));
        rows.push_back(r);
    }
    if (!header)
        throw std::runtime_error("missing header");
    return rows;
}

size_t dim_from_rows(const std::vector<ChartRow>& rows, int s, int f, int w)
{
    const ChartRow* lowest = nullptr;
    for (const auto& r : rows) {
        if (r.s != s || r.f != f)
            continue;
        if (r.w == w)
            return r.dim;
        if (!lowest || r.w < lowest->w)
            lowest = &r;
    }
    return lowest && w < lowest->w ? lowest->dim : 0;
}

Palette load_palette(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open palette " + path);
    auto j = nlohmann::json::parse(in);
    Palette p;
    auto take = [&](const char* key, std::string& dst) {
        if (j.contains(key))
            dst = j.at(key).get<std::string>();
    };
    take("background", p.background);
    take("grid", p.grid);
    take("axis", p.axis);
    take("label", p.label);
    take("free", p.free);
    take("torsion", p.torsion);
    return p;
}

std::string default_palette_path() { return std::string(MOTEXT_DATA_DIR) + "/palette.json"; }

namespace {

struct Marker {
    int w;
    bool torsion;
};

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const ExtTable& ext, int max_stem, int max_f, const Palette& pal, const std::string& title)
{
    constexpr int cell = 24, margin = 36, top = 30;
    const int width = margin + (max_stem + 1) * cell + 12;
    const int height = top + (max_f + 1) * cell + margin;
    auto cx = [&](int s) { return margin + s * cell + cell / 2; };
    auto cy = [&](int f) { return top + (max_f - f) * cell + cell / 2; };

    std::string o;
    o += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
                     width, height, width, height);
    o += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"{}\"/>\n", width, height, pal.background);
    o += fmt::format("<text x=\"{}\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\" fill=\"{}\">{}</text>\n",
                     margin, pal.label, escape(title));

    o += fmt::format("<g stroke=\"{}\" stroke-width=\"1\">\n", pal.grid);
    for (int s = 0; s <= max_stem + 1; ++s)
        o += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", margin + s * cell, top,
                         margin + s * cell, top + (max_f + 1) * cell);
    for (int f = 0; f <= max_f + 1; ++f)
        o += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", margin, top + f * cell,
                         margin + (max_stem + 1) * cell, top + f * cell);
    o += "</g>\n";

    o += fmt::format("<g font-family=\"sans-serif\" font-size=\"9\" fill=\"{}\" text-anchor=\"middle\">\n", pal.axis);
    for (int s = 0; s <= max_stem; s += (max_stem > 30 ? 2 : 1))
        o += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", cx(s), top + (max_f + 1) * cell + 12, s);
    for (int f = 0; f <= max_f; ++f)
        o += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", margin - 10, cy(f) + 3, f);
    o += fmt::format("<text x=\"{}\" y=\"{}\">s</text>\n", margin + (max_stem + 1) * cell / 2, height - 6);
    o += fmt::format("<text x=\"{}\" y=\"{}\">f</text>\n", 10, top + (max_f + 1) * cell / 2);
    o += "</g>\n";

    for (int s = 0; s <= max_stem; ++s)
        for (int f = 0; f <= max_f; ++f) {
            ext.resolution().require_ext(s, f);
            const auto& g = ext.group(s, f);
            if (g.num_generators() == 0)
                continue;
            std::vector<Marker> marks;
            for (int w = g.w_high(); w >= g.w_low(); --w) {
                size_t incoming = w < g.w_high() ? g.tau_rank(w + 1) : 0;
                size_t fresh = g.dim(w) - incoming;
                size_t above = w < g.w_high() ? g.stable_rank(w + 1) : 0;
                size_t free_new = g.stable_rank(w) - above;
                for (size_t i = 0; i < free_new; ++i)
                    marks.push_back({w, false});
                for (size_t i = free_new; i < fresh; ++i)
                    marks.push_back({w, true});
            }
            if (marks.empty())
                continue;
            const int n = static_cast<int>(marks.size());
            const int step = n > 1 ? std::min(7, 18 / (n - 1)) : 0;
            int x0 = cx(s) - step * (n - 1) / 2;
            for (int i = 0; i < n; ++i) {
                int x = x0 + i * step, y = cy(f);
                const auto& m = marks[i];
                std::string tip = fmt::format("<title>({},{},{}){}</title>", s, f, m.w, m.torsion ? " tau-torsion" : "");
                if (m.torsion)
                    o += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"6\" height=\"6\" fill=\"none\" stroke=\"{}\" "
                                     "stroke-width=\"1.5\">{}</rect>\n",
                                     x - 3, y - 3, pal.torsion, tip);
                else
                    o += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\">{}</circle>\n", x, y, pal.free,
                                     tip);
            }
        }

    int ly = height - 6;
    o += fmt::format("<g font-family=\"sans-serif\" font-size=\"9\" fill=\"{}\">\n", pal.label);
    o += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\"/>\n", width - 150, ly - 3, pal.free);
    o += fmt::format("<text x=\"{}\" y=\"{}\">tau-free</text>\n", width - 144, ly);
    o += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"6\" height=\"6\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n",
                     width - 93, ly - 6, pal.torsion);
    o += fmt::format("<text x=\"{}\" y=\"{}\">tau-torsion</text>\n", width - 84, ly);
    o += "</g>\n</svg>\n";
    return o;
}

}  // namespace motext
