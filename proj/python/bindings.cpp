#include "motext/chart.hpp"
#include "motext/query.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace motext;

namespace {

// A resolution plus the Ext table read off it; the table is dropped whenever
// the resolution grows.
struct PyResolution {
    std::string algebra;
    std::unique_ptr<Resolution> r;
    mutable std::unique_ptr<ExtTable> ext;

    const ExtTable& table() const
    {
        if (!ext)
            ext = std::make_unique<ExtTable>(*r);
        return *ext;
    }
    const ExtGroup& group(int s, int f) const
    {
        r->require_ext(s, f);
        return table().group(s, f);
    }
};

py::dict as_dict(const NamedValue& v)
{
    py::dict d;
    d["s"] = v.s;
    d["f"] = v.f;
    d["w"] = v.w;
    d["value"] = v.value;
    return d;
}

}  // namespace

PYBIND11_MODULE(_motext, m)
{
    m.doc() = "Ext over motivic Steenrod subalgebras";

    py::register_exception<ResolutionError>(m, "ResolutionError", PyExc_RuntimeError);
    py::register_exception<NamingError>(m, "NamingError", PyExc_KeyError);
    py::register_exception<YonedaError>(m, "YonedaError", PyExc_ValueError);

    m.def("presets", [] {
        return std::vector<std::string>{"A", "A2", "B", "E-tau3", "A-classical", "A2-classical", "B-classical"};
    });

    py::class_<PyResolution>(m, "Resolution")
        .def(py::init([](const std::string& algebra, int degree_cap) {
                 return PyResolution{algebra,
                                     std::make_unique<Resolution>(MotivicProfile::preset(algebra, degree_cap)), nullptr};
             }),
             py::arg("algebra"), py::arg("degree_cap"))
        .def_static(
            "load",
            [](const std::string& path, const std::string& algebra) {
                auto r = std::make_unique<Resolution>(Resolution::load_file(path));
                if (r->profile() != MotivicProfile::preset(algebra, r->profile().degree_cap))
                    throw ResolutionError(path + " is not a checkpoint of " + algebra);
                return PyResolution{algebra, std::move(r), nullptr};
            },
            py::arg("path"), py::arg("algebra"))
        .def_readonly("algebra", &PyResolution::algebra)
        .def_property_readonly("degree_cap", [](const PyResolution& p) { return p.r->profile().degree_cap; })
        .def_property_readonly("profile", [](const PyResolution& p) { return p.r->profile().describe(); })
        .def(
            "extend",
            [](PyResolution& p, int max_stem, int max_f, int threads) {
                p.ext.reset();
                py::gil_scoped_release release;
                p.r->extend(max_stem, max_f, threads);
            },
            py::arg("max_stem"), py::arg("max_f"), py::arg("threads") = 1)
        .def("save", [](const PyResolution& p, const std::string& path) { p.r->save_file(path); })
        .def("covers", [](const PyResolution& p, int s, int f) { return p.r->covers_ext(s, f); })
        .def("total_generators", [](const PyResolution& p) { return p.r->total_generators(); })
        .def("generators", [](const PyResolution& p, int s, int f) {
            auto [b, e] = p.r->generators_in_degree(f, s + f);
            return e - b;
        })
        .def("dim", [](const PyResolution& p, int s, int f, int w) { return p.group(s, f).dim(w); })
        .def("tau_rank", [](const PyResolution& p, int s, int f, int w) { return p.group(s, f).tau_rank(w); })
        .def("weight_window", [](const PyResolution& p, int s, int f) {
            const auto& g = p.group(s, f);
            return std::make_pair(g.w_low(), g.w_high());
        })
        .def("chart_rows",
             [](const PyResolution& p, int max_stem, int max_f) {
                 std::vector<std::tuple<int, int, int, size_t, size_t>> out;
                 for (const auto& r : chart_rows(p.table(), max_stem, max_f))
                     out.emplace_back(r.s, r.f, r.w, r.dim, r.tau_rank);
                 return out;
             })
        .def("chart_tsv",
             [](const PyResolution& p, int max_stem, int max_f) {
                 std::ostringstream os;
                 write_tsv(os, chart_rows(p.table(), max_stem, max_f), p.algebra, max_stem, max_f);
                 return os.str();
             })
        .def(
            "svg",
            [](const PyResolution& p, int max_stem, int max_f, const std::string& palette) {
                return render_svg(p.table(), max_stem, max_f, load_palette(palette),
                                  "Ext over " + p.algebra);
            },
            py::arg("max_stem"), py::arg("max_f"), py::arg("palette"));

    m.def("read_tsv", [](const std::string& text) {
        std::istringstream is(text);
        std::vector<std::tuple<int, int, int, size_t, size_t>> out;
        for (const auto& r : read_tsv(is))
            out.emplace_back(r.s, r.f, r.w, r.dim, r.tau_rank);
        return out;
    });

    py::class_<Workspace>(m, "Workspace")
        .def(py::init([](const std::string& checkpoint_dir, int threads) {
                 WorkspaceOptions o;
                 o.checkpoint_dir = checkpoint_dir;
                 o.threads = threads;
                 return std::make_unique<Workspace>(std::move(o));
             }),
             py::arg("checkpoint_dir") = "", py::arg("threads") = 1)
        .def(
            "product",
            [](Workspace& ws, const std::vector<std::string>& factors, const std::string& ring) {
                return as_dict(query_product(ws, ring, factors));
            },
            py::arg("factors"), py::arg("ring") = "A")
        .def(
            "massey",
            [](Workspace& ws, const std::string& a, const std::string& b, const std::string& c,
               const std::string& ring) {
                auto v = query_massey(ws, ring, a, b, c);
                py::dict d = as_dict({v.s, v.f, v.w, v.value});
                d["indeterminacy_rank"] = v.indeterminacy_rank;
                return d;
            },
            py::arg("a"), py::arg("b"), py::arg("c"), py::arg("ring") = "A")
        .def("restrict", [](Workspace& ws, const std::string& expr) { return as_dict(query_restrict(ws, expr)); })
        .def(
            "mahowald",
            [](Workspace& ws, const std::string& expr, int k) {
                auto v = query_mahowald(ws, expr, k);
                py::dict d;
                d["s"] = v.s;
                d["f"] = v.f;
                d["w"] = v.w;
                d["nonzero"] = v.nonzero;
                d["restriction"] = v.restriction;
                d["factors"] = v.factors;
                return d;
            },
            py::arg("expr"), py::arg("k") = 1);
}
