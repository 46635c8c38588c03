// motext: resolutions, Ext queries, charts and verification from the shell.

#include "motext/chart.hpp"
#include "motext/query.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace motext;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kCheckpointEnv = "MOTEXT_CHECKPOINT_DIR";
const std::set<std::string> kPresets = {"A", "A2", "B", "E-tau3", "A-classical", "A2-classical", "B-classical"};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Job {
    std::string algebra = "A";
    std::optional<json> raw_profile;  // {"mode", "tau_heights", "xi_heights"}
    int max_stem = -1, max_f = -1;
    std::string checkpoint;
    int threads = 1;
    std::string format = "text";
    std::string output;
    int save_every = 4;
    bool quiet = false;
};

// Values given on the command line; unset ones fall back to the config file.
struct Flags {
    std::string config, algebra, checkpoint, format, output;
    int max_stem = -1, max_f = -1, threads = 0, save_every = 0;
    bool quiet = false;
};

Job make_job(const Flags& fl, CLI::App& app)
{
    Job j;
    if (!fl.config.empty()) {
        std::ifstream in(fl.config);
        if (!in)
            throw UsageError("cannot open config " + fl.config);
        json c;
        try {
            c = json::parse(in);
        } catch (const json::exception& e) {
            throw UsageError("config " + fl.config + ": " + e.what());
        }
        static const std::set<std::string> known = {"algebra", "profile", "max_stem", "max_f", "checkpoint",
                                                    "threads", "format", "output", "save_every"};
        for (const auto& [k, v] : c.items())
            if (!known.count(k))
                throw UsageError("config: unknown key '" + k + "'");
        try {
            if (c.contains("algebra"))
                j.algebra = c["algebra"].get<std::string>();
            if (c.contains("profile")) {
                j.raw_profile = c["profile"];
                if (!c.contains("algebra"))
                    j.algebra = "custom";
            }
            if (c.contains("max_stem"))
                j.max_stem = c["max_stem"].get<int>();
            if (c.contains("max_f"))
                j.max_f = c["max_f"].get<int>();
            if (c.contains("checkpoint"))
                j.checkpoint = c["checkpoint"].get<std::string>();
            if (c.contains("threads"))
                j.threads = c["threads"].get<int>();
            if (c.contains("format"))
                j.format = c["format"].get<std::string>();
            if (c.contains("output"))
                j.output = c["output"].get<std::string>();
            if (c.contains("save_every"))
                j.save_every = c["save_every"].get<int>();
        } catch (const json::exception& e) {
            throw UsageError(std::string("config: ") + e.what());
        }
    }
    auto given = [&](const char* name) { return app.count(name) > 0; };
    if (given("--algebra")) {
        j.algebra = fl.algebra;
        j.raw_profile.reset();
    }
    if (given("--max-stem"))
        j.max_stem = fl.max_stem;
    if (given("--max-f"))
        j.max_f = fl.max_f;
    if (given("--checkpoint"))
        j.checkpoint = fl.checkpoint;
    if (given("--threads"))
        j.threads = fl.threads;
    if (given("--format"))
        j.format = fl.format;
    if (given("--output"))
        j.output = fl.output;
    if (given("--save-every"))
        j.save_every = fl.save_every;
    j.quiet = fl.quiet;

    if (!j.raw_profile && !kPresets.count(j.algebra))
        throw UsageError("unknown algebra '" + j.algebra + "'");
    if (j.format != "text" && j.format != "tsv" && j.format != "svg")
        throw UsageError("format must be text, tsv or svg");
    if (j.threads < 1)
        throw UsageError("threads must be positive");
    if (j.save_every < 1)
        throw UsageError("save_every must be positive");
    return j;
}

MotivicProfile job_profile(const Job& j, int cap)
{
    if (!j.raw_profile)
        return MotivicProfile::preset(j.algebra, cap);
    const json& p = *j.raw_profile;
    try {
        const std::string mode = p.value("mode", "motivic");
        if (mode != "motivic" && mode != "classical")
            throw UsageError("profile mode must be motivic or classical");
        return MotivicProfile::from_heights(mode == "motivic" ? Mode::motivic : Mode::classical,
                                            p.value("tau_heights", std::vector<uint32_t>{}),
                                            p.value("xi_heights", std::vector<uint32_t>{}), cap);
    } catch (const json::exception& e) {
        throw UsageError(std::string("config profile: ") + e.what());
    }
}

std::string checkpoint_location(const Job& j)
{
    std::string p = j.checkpoint;
    if (p.empty()) {
        const char* d = std::getenv(kCheckpointEnv);
        return d && *d ? (fs::path(d) / (j.algebra + ".ckpt")).string() : std::string();
    }
    if (fs::is_directory(p) || p.back() == '/')
        return (fs::path(p) / (j.algebra + ".ckpt")).string();
    return p;
}

void note(const Job& j, const std::string& msg)
{
    if (!j.quiet)
        std::cerr << msg << '\n';
}

std::unique_ptr<Resolution> load_checked(const Job& j, const std::string& file)
{
    auto r = std::make_unique<Resolution>(Resolution::load_file(file));
    if (r->profile() != job_profile(j, r->profile().degree_cap))
        throw ResolutionError(file + " holds " + r->profile().describe() + ", not " + j.algebra);
    return r;
}

// Largest stem with Ext computable for every f <= max_f.
int covered_stem(const Resolution& r, int max_f)
{
    int stem = std::numeric_limits<int>::max();
    for (int f = 0; f <= max_f; ++f)
        stem = std::min(stem, std::min(r.frontier(f), r.frontier(f + 1)) - f);
    return stem;
}

std::ostream& output_stream(const Job& j, std::ofstream& file)
{
    if (j.output.empty() || j.output == "-")
        return std::cout;
    file.open(j.output, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot write " + j.output);
    return file;
}

// --- resolve ---------------------------------------------------------------

int cmd_resolve(const Job& j)
{
    if (j.max_stem < 0 || j.max_f < 0)
        throw UsageError("resolve needs --max-stem and --max-f (or max_stem/max_f in the config)");
    std::string file = checkpoint_location(j);
    if (file.empty())
        file = j.algebra + ".ckpt";
    const int cap = j.max_stem + j.max_f + 2;
    std::unique_ptr<Resolution> r;
    if (fs::exists(file)) {
        r = load_checked(j, file);
        if (r->profile().degree_cap < cap) {
            note(j, fmt::format("{}: degree cap {} is below {}; starting over", file, r->profile().degree_cap, cap));
            r.reset();
        } else {
            note(j, "resuming from " + file);
        }
    }
    if (!r)
        r = std::make_unique<Resolution>(job_profile(j, cap));

    const auto t0 = std::chrono::steady_clock::now();
    auto last = t0;
    int last_f = -1;
    auto progress = [&](int f, int t) {
        auto now = std::chrono::steady_clock::now();
        if (f != last_f && (now - last > std::chrono::seconds(2) || f == 0)) {
            last = now;
            last_f = f;
            note(j, fmt::format("  f={} t={} [{:.1f}s]", f, t, std::chrono::duration<double>(now - t0).count()));
        }
    };
    for (int stem = std::min(j.max_stem, j.save_every);; stem = std::min(j.max_stem, stem + j.save_every)) {
        bool grew = !r->covers_ext(stem, j.max_f);
        r->extend(stem, j.max_f, j.threads, progress);
        if (grew) {
            if (fs::path(file).has_parent_path())
                fs::create_directories(fs::path(file).parent_path());
            r->save_file(file);
            note(j, fmt::format("saved {} through stem {}", file, stem));
        }
        if (stem == j.max_stem)
            break;
    }

    std::ofstream of;
    std::ostream& out = output_stream(j, of);
    if (j.format == "tsv") {
        out << "s\tf\tgenerators\n";
        for (int s = 0; s <= j.max_stem; ++s)
            for (int f = 0; f <= j.max_f; ++f) {
                auto [b, e] = r->generators_in_degree(f, s + f);
                if (e > b)
                    out << s << '\t' << f << '\t' << (e - b) << '\n';
            }
        return 0;
    }
    out << fmt::format("{} ({}) resolved through stem {}, f <= {}\n", j.algebra, r->profile().describe(), j.max_stem,
                       j.max_f);
    out << "generators by (s, f); rows are f, columns are s\n";
    for (int f = j.max_f; f >= 0; --f) {
        out << fmt::format("{:>3} |", f);
        for (int s = 0; s <= j.max_stem; ++s) {
            auto [b, e] = r->generators_in_degree(f, s + f);
            out << (e > b ? fmt::format("{:>3}", e - b) : std::string("  ."));
        }
        out << '\n';
    }
    out << "    +" << std::string(3 * (j.max_stem + 1), '-') << '\n' << "     ";
    for (int s = 0; s <= j.max_stem; ++s)
        out << fmt::format("{:>3}", s % 100);
    size_t total = 0;
    for (int f = 0; f <= j.max_f; ++f)
        for (int s = 0; s <= j.max_stem; ++s) {
            auto [b, e] = r->generators_in_degree(f, s + f);
            total += e - b;
        }
    out << fmt::format("\ntotal generators: {}\ncheckpoint: {}\n", total, file);
    return 0;
}

// --- ext and chart -----------------------------------------------------------

// Opens the job's resolution for reading: a checkpoint when one exists (it
// must then cover the region), otherwise an in-memory computation.
std::unique_ptr<Resolution> open_region(Job& j, int extra_stem = 0)
{
    const std::string file = checkpoint_location(j);
    std::unique_ptr<Resolution> r;
    if (!file.empty() && fs::exists(file)) {
        r = load_checked(j, file);
        if (j.max_f < 0)
            j.max_f = std::max(0, r->max_gen_f() - 1);
        if (j.max_stem < 0)
            j.max_stem = std::max(0, covered_stem(*r, j.max_f));
        const int stem = j.max_stem + extra_stem;
        for (int f = 0; f <= j.max_f; ++f)
            if (!r->covers_ext(stem, f))
                throw ResolutionError(fmt::format(
                    "{} does not cover stem {}, f <= {}; run: motext resolve --algebra {} --max-stem {} --max-f {}",
                    file, stem, j.max_f, j.algebra, stem, j.max_f));
        return r;
    }
    if (j.max_stem < 0 || j.max_f < 0)
        throw UsageError("no checkpoint found; give --max-stem and --max-f to compute in memory");
    const int stem = j.max_stem + extra_stem;
    note(j, fmt::format("no checkpoint; computing {} to stem {}, f <= {}", j.algebra, stem, j.max_f));
    r = std::make_unique<Resolution>(job_profile(j, stem + j.max_f + 2));
    r->extend(stem, j.max_f, j.threads);
    return r;
}

std::tuple<int, int, int> parse_tridegree(const std::string& s)
{
    int a, b, c;
    char x, y;
    std::istringstream is(s);
    if (!(is >> a >> x >> b >> y >> c) || x != ',' || y != ',')
        throw UsageError("expected s,f,w but got '" + s + "'");
    return {a, b, c};
}

int cmd_ext(Job j, const std::string& at)
{
    if (!at.empty()) {
        auto [s, f, w] = parse_tridegree(at);
        j.max_stem = std::max(j.max_stem, s);
        j.max_f = std::max(j.max_f, f);
        auto r = open_region(j);
        ExtTable ext(*r);
        r->require_ext(s, f);
        const auto& g = ext.group(s, f);
        if (j.format == "tsv")
            std::cout << "s\tf\tw\tdim\ttau_rank\n"
                      << s << '\t' << f << '\t' << w << '\t' << g.dim(w) << '\t' << g.tau_rank(w) << '\n';
        else
            std::cout << g.dim(w) << '\n';
        return 0;
    }
    auto r = open_region(j);
    ExtTable ext(*r);
    auto rows = chart_rows(ext, j.max_stem, j.max_f);
    std::ofstream of;
    std::ostream& out = output_stream(j, of);
    if (j.format == "tsv") {
        write_tsv(out, rows, j.algebra, j.max_stem, j.max_f);
        return 0;
    }
    out << fmt::format("Ext over {} for s <= {}, f <= {}\n", j.algebra, j.max_stem, j.max_f);
    out << fmt::format("{:>4} {:>3} {:>4} {:>4} {:>8}\n", "s", "f", "w", "dim", "tau_rank");
    for (const auto& row : rows)
        out << fmt::format("{:>4} {:>3} {:>4} {:>4} {:>8}\n", row.s, row.f, row.w, row.dim, row.tau_rank);
    return 0;
}

int cmd_chart(Job j, const std::string& palette_path)
{
    auto r = open_region(j);
    ExtTable ext(*r);
    std::ofstream of;
    std::ostream& out = output_stream(j, of);
    if (j.format == "tsv") {
        write_tsv(out, chart_rows(ext, j.max_stem, j.max_f), j.algebra, j.max_stem, j.max_f);
        return 0;
    }
    const Palette pal = load_palette(palette_path.empty() ? default_palette_path() : palette_path);
    out << render_svg(ext, j.max_stem, j.max_f, pal,
                      fmt::format("Ext over {}  (s <= {}, f <= {})", j.algebra, j.max_stem, j.max_f));
    return 0;
}

// --- queries over named classes ----------------------------------------------

std::string named_ring(const Job& j)
{
    std::string ring = ring_of_preset(j.algebra);
    if (ring.empty())
        throw UsageError("named classes are available over A, A2 and B, not " + j.algebra);
    return ring;
}

Workspace query_workspace(const Job& j)
{
    WorkspaceOptions o;
    o.read_only = true;
    o.threads = j.threads;
    const std::string& p = j.checkpoint;
    if (p.empty()) {
        if (const char* d = std::getenv(kCheckpointEnv))
            o.checkpoint_dir = d;
    } else if (fs::is_directory(p) || p.back() == '/') {
        o.checkpoint_dir = p;
    } else {
        o.files[j.algebra] = p;
    }
    if (!j.quiet)
        o.log = [](const std::string& m) { std::cerr << m << '\n'; };
    return Workspace(std::move(o));
}

std::string join(const std::vector<std::string>& v, const std::string& sep)
{
    std::string out;
    for (size_t i = 0; i < v.size(); ++i)
        out += (i ? sep : "") + v[i];
    return out;
}

void print_value(const Job& j, const NamedValue& v)
{
    if (j.format == "tsv")
        std::cout << "s\tf\tw\tvalue\n" << v.s << '\t' << v.f << '\t' << v.w << '\t' << v.value << '\n';
    else
        std::cout << v.value << '\n';
}

int cmd_product(const Job& j, const std::vector<std::string>& factors)
{
    Workspace ws = query_workspace(j);
    print_value(j, query_product(ws, named_ring(j), factors));
    return 0;
}

int cmd_massey(const Job& j, const std::vector<std::string>& args)
{
    if (args.size() != 3)
        throw UsageError("massey takes three classes");
    Workspace ws = query_workspace(j);
    auto v = query_massey(ws, named_ring(j), args[0], args[1], args[2]);
    if (j.format == "tsv")
        std::cout << "s\tf\tw\tvalue\tindeterminacy_rank\n"
                  << v.s << '\t' << v.f << '\t' << v.w << '\t' << v.value << '\t' << v.indeterminacy_rank << '\n';
    else
        std::cout << fmt::format("<{}> = {}  at ({},{},{}), indeterminacy of rank {}\n", join(args, ", "), v.value,
                                 v.s, v.f, v.w, v.indeterminacy_rank);
    return 0;
}

int cmd_restrict(const Job& j, const std::vector<std::string>& args)
{
    Workspace ws = query_workspace(j);
    print_value(j, query_restrict(ws, join(args, " ")));
    return 0;
}

int cmd_mahowald(const Job& j, const std::vector<std::string>& args, int k, bool check)
{
    if (k < 1)
        throw UsageError("--k must be positive");
    const std::string expr = join(args, " ");
    Workspace ws = query_workspace(j);
    auto v = query_mahowald(ws, expr, k);
    const std::string label = (k == 1 ? "M" : fmt::format("M^{}", k)) + " " + expr;
    if (j.format == "tsv") {
        std::cout << "s\tf\tw\tnonzero\trestriction" << (check ? "\tfactors" : "") << '\n';
        std::cout << v.s << '\t' << v.f << '\t' << v.w << '\t' << (v.nonzero ? "true" : "false") << '\t'
                  << v.restriction << (check ? (v.factors ? "\tpass" : "\tfail") : "") << '\n';
    } else {
        std::cout << fmt::format("{} at ({},{},{}): {}\n", label, v.s, v.f, v.w, v.nonzero ? "nonzero" : "zero");
        std::cout << fmt::format("p*({}) = {}\n", label, v.restriction);
        if (check)
            std::cout << (v.factors ? "pass" : "fail") << '\n';
    }
    return check && !v.factors ? 1 : 0;
}

// --- verify ------------------------------------------------------------------

int cmd_verify(const Job& j, const std::string& suite, const std::string& manifest)
{
    WorkspaceOptions o;
    o.threads = j.threads;
    std::string dir = j.checkpoint;
    if (dir.empty())
        if (const char* d = std::getenv(kCheckpointEnv))
            dir = d;
    o.checkpoint_dir = dir;
    const auto t0 = std::chrono::steady_clock::now();
    if (!j.quiet)
        o.log = [&](const std::string& m) {
            std::cerr << fmt::format("  .. {} [{:.1f}s]\n", m,
                                     std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        };
    Workspace ws(o);
    int failed = 0, total = 0;
    run_suite(ws, load_manifest(manifest.empty() ? default_manifest_path() : manifest), suite,
              [&](const CheckOutcome& c) {
                  ++total;
                  failed += !c.pass;
                  std::cout << fmt::format("[{}] c{} {}: expected \"{}\" computed \"{}\" ({}: {}) {:.1f}s\n",
                                           c.pass ? "pass" : "FAIL", c.entry.criterion, c.entry.id, c.entry.expected,
                                           c.computed, c.entry.provenance, c.entry.quote, c.seconds);
                  std::cout.flush();
              });
    if (total == 0)
        throw UsageError("suite '" + suite + "' has no checks");
    std::cout << fmt::format("{}: {}/{} checks passed\n", suite, total - failed, total);
    return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Ext over motivic Steenrod subalgebras: resolutions, products, brackets, charts"};
    app.require_subcommand(1);
    Flags fl;
    app.add_option("--config", fl.config, "JSON job file; flags override its keys");
    app.add_option("--algebra", fl.algebra, "A, A2, B, E-tau3, A-classical, A2-classical, B-classical");
    app.add_option("--max-stem", fl.max_stem, "largest stem s = t - f");
    app.add_option("--max-f", fl.max_f, "largest Adams filtration");
    app.add_option("--checkpoint", fl.checkpoint,
                   std::string("checkpoint file, or directory holding <algebra>.ckpt (default: $") + kCheckpointEnv + ")");
    app.add_option("--threads", fl.threads, "worker threads for resolving");
    app.add_option("--format", fl.format, "text, tsv or svg");
    app.add_option("-o,--output", fl.output, "write results here instead of stdout");
    app.add_option("--save-every", fl.save_every, "stems between checkpoint writes while resolving");
    app.add_flag("-q,--quiet", fl.quiet, "no progress on stderr");

    auto* resolve = app.add_subcommand("resolve", "extend or resume a resolution and save the checkpoint");
    std::string at;
    auto* ext = app.add_subcommand("ext", "dimension table of Ext (s, f, w, dim, tau rank)");
    ext->add_option("--at", at, "single tridegree s,f,w");
    std::string palette;
    auto* chart = app.add_subcommand("chart", "Adams chart as SVG (default) or TSV");
    chart->add_option("--palette", palette, "palette JSON");
    std::vector<std::string> factors, triple, rargs, margs;
    auto* prod = app.add_subcommand("product", "product of named classes, e.g. product h0^3 g2");
    prod->add_option("classes", factors, "expressions in class names")->required();
    auto* mas = app.add_subcommand("massey", "Massey product <a, b, c>");
    mas->add_option("classes", triple, "three expressions")->required()->expected(3);
    auto* res = app.add_subcommand("restrict", "p*: Ext over A -> Ext over B");
    res->add_option("class", rargs, "expression over A")->required();
    int k = 1;
    bool check_factor = false;
    auto* mah = app.add_subcommand("mahowald", "M x = <g2, h0^3, x> over A and its restriction");
    mah->add_option("class", margs, "expression over A")->required();
    mah->add_option("--k", k, "iterate M k times");
    mah->add_flag("--check-prop42", check_factor, "check p*(M x) = (e0 v3^2 + h1^3 v3^3) p*(x)");
    std::string suite, manifest;
    auto* ver = app.add_subcommand("verify", "run a verification suite from the manifest");
    ver->add_option("suite", suite, "quick, paper or extended")->required();
    ver->add_option("--manifest", manifest, "manifest JSON");
    for (auto* sub : {resolve, ext, chart, prod, mas, res, mah, ver})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        Job j = make_job(fl, app);
        if (*resolve)
            return cmd_resolve(j);
        if (*ext)
            return cmd_ext(j, at);
        if (*chart) {
            if (!app.count("--format") && j.format == "text")
                j.format = "svg";
            return cmd_chart(j, palette);
        }
        if (*prod)
            return cmd_product(j, factors);
        if (*mas)
            return cmd_massey(j, triple);
        if (*res)
            return cmd_restrict(j, rargs);
        if (*mah)
            return cmd_mahowald(j, margs, k, check_factor);
        if (*ver)
            return cmd_verify(j, suite, manifest);
    } catch (const UsageError& e) {
        std::cerr << "motext: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "motext: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
