#include "motext/verify.hpp"

#include "motext/cobar.hpp"
#include "motext/hopf.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#ifndef MOTEXT_DATA_DIR
#define MOTEXT_DATA_DIR "data"
#endif

namespace motext {

namespace fs = std::filesystem;
using json = nlohmann::json;

bool ManifestEntry::in_suite(const std::string& s) const
{
    return std::find(suites.begin(), suites.end(), s) != suites.end();
}

std::string ManifestEntry::arg(const std::string& key) const
{
    auto it = args.find(key);
    if (it == args.end())
        throw std::invalid_argument("manifest entry " + id + ": missing argument '" + key + "'");
    return it->second;
}

int ManifestEntry::int_arg(const std::string& key) const { return std::stoi(arg(key)); }

std::vector<ManifestEntry> load_manifest(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open manifest " + path);
    json doc = json::parse(in);
    if (doc.value("version", 0) != 1)
        throw std::runtime_error("manifest " + path + ": unsupported version");
    std::vector<ManifestEntry> out;
    for (const auto& c : doc.at("checks")) {
        ManifestEntry e;
        e.id = c.at("id").get<std::string>();
        e.criterion = c.at("criterion").get<int>();
        e.suites = c.at("suites").get<std::vector<std::string>>();
        e.check = c.at("check").get<std::string>();
        for (const auto& [k, v] : c.at("args").items())
            e.args[k] = v.is_string() ? v.get<std::string>() : v.dump();
        e.expected = c.at("expected").get<std::string>();
        e.provenance = c.at("provenance").get<std::string>();
        e.quote = c.value("quote", "");
        out.push_back(std::move(e));
    }
    return out;
}

std::string default_manifest_path() { return std::string(MOTEXT_DATA_DIR) + "/manifest.json"; }

// ---------------------------------------------------------------------------

Workspace::Workspace(WorkspaceOptions opts) : opts_(std::move(opts)) {}
Workspace::~Workspace() = default;

void Workspace::require(const std::string& preset, int stem, int f)
{
    needs_[preset].push_back({std::max(stem, 0), std::max(f, 0)});
}

void Workspace::prepare()
{
    for (auto& [preset, needs] : needs_) {
        int cap = 0;
        for (const auto& n : needs)
            cap = std::max(cap, n.stem + n.f + 2);
        auto& slot = res_[preset];
        if (slot && slot->profile().degree_cap < cap) {
            slot.reset();
            namers_.clear();
            restriction_.reset();
        }
        fs::path file;
        if (auto it = opts_.files.find(preset); it != opts_.files.end())
            file = it->second;
        else if (!opts_.checkpoint_dir.empty())
            file = fs::path(opts_.checkpoint_dir) / (preset + ".ckpt");
        if (!slot && !file.empty() && fs::exists(file)) {
            auto loaded = std::make_unique<Resolution>(Resolution::load_file(file.string()));
            const int lcap = loaded->profile().degree_cap;
            const bool same = loaded->profile() == MotivicProfile::preset(preset, lcap);
            if (opts_.read_only) {
                if (!same)
                    throw ResolutionError(file.string() + " is not a checkpoint of " + preset);
                for (const auto& n : needs)
                    if (lcap < n.stem + n.f + 2 || !loaded->covers_ext(n.stem, n.f))
                        throw ResolutionError(fmt::format(
                            "{} does not cover stem {}, f <= {}; run: motext resolve --algebra {} --max-stem {} --max-f {}",
                            file.string(), n.stem, n.f, preset, n.stem, n.f));
            }
            if (same && lcap >= cap) {
                slot = std::move(loaded);
                if (opts_.log)
                    opts_.log("loaded " + file.string());
            }
        }
        if (!slot)
            slot = std::make_unique<Resolution>(MotivicProfile::preset(preset, cap));
        bool grew = false;
        for (const auto& n : needs)
            if (!slot->covers_ext(n.stem, n.f)) {
                if (opts_.log)
                    opts_.log("resolving " + preset + " to stem " + std::to_string(n.stem) + ", f <= " + std::to_string(n.f));
                slot->extend(n.stem, n.f, opts_.threads);
                grew = true;
            }
        if (grew && !file.empty() && !opts_.read_only) {
            if (file.has_parent_path())
                fs::create_directories(file.parent_path());
            slot->save_file(file.string());
        }
    }
}

Resolution& Workspace::resolution(const std::string& preset)
{
    auto it = res_.find(preset);
    if (it == res_.end() || !it->second)
        throw std::logic_error("workspace: " + preset + " was not prepared");
    return *it->second;
}

bool Workspace::has(const std::string& preset) const
{
    auto it = res_.find(preset);
    return it != res_.end() && it->second;
}

std::vector<std::string> Workspace::presets() const
{
    std::vector<std::string> out;
    for (const auto& [k, v] : res_)
        if (v)
            out.push_back(k);
    return out;
}

const Namer& Workspace::namer(const std::string& ring)
{
    auto& slot = namers_[ring];
    if (!slot) {
        if (ring == "B")
            slot = std::make_unique<Namer>(resolution("B"), "B", &resolution("A2"));
        else
            slot = std::make_unique<Namer>(resolution(ring), ring);
    }
    return *slot;
}

const ChangeOfRings& Workspace::restriction()
{
    if (!restriction_)
        restriction_ = std::make_unique<ChangeOfRings>(resolution("B"), resolution("A"));
    return *restriction_;
}

// ---------------------------------------------------------------------------

namespace {

std::string tri(int s, int f, int w)
{
    return "(" + std::to_string(s) + "," + std::to_string(f) + "," + std::to_string(w) + ")";
}

std::string nonzero_at(const ExtTable& ext, const ExtClass& x, bool with_degree)
{
    if (ext.is_zero(x))
        return "zero";
    return with_degree ? "nonzero at " + tri(x.s, x.f, x.w) : "nonzero";
}

const NameEntry* find_entry(const std::string& ring, const std::string& name)
{
    for (const auto& e : naming_table())
        if (e.name == name && (e.ring == ring || (ring == "B" && e.ring == "A2")))
            return &e;
    return nullptr;
}

std::string check_splitting(Workspace& ws, int stem, int fmax)
{
    const ExtTable eb(ws.resolution("B")), eq(ws.resolution("A2"));
    size_t cells = 0;
    for (int s = 0; s <= stem; ++s)
        for (int f = 0; f <= fmax; ++f) {
            const auto& gb = eb.group(s, f);
            int lo = gb.w_low(), hi = gb.w_high();
            for (int k = 0; 14 * k <= s && k <= f; ++k) {
                const auto& gq = eq.group(s - 14 * k, f - k);
                lo = std::min(lo, gq.w_low() + 7 * k);
                hi = std::max(hi, gq.w_high() + 7 * k);
            }
            for (int w = lo - 1; w <= hi + 1; ++w) {
                size_t dim = 0, rk = 0;
                for (int k = 0; 14 * k <= s && k <= f; ++k) {
                    const auto& gq = eq.group(s - 14 * k, f - k);
                    dim += gq.dim(w - 7 * k);
                    rk += gq.tau_rank(w - 7 * k);
                }
                ++cells;
                if (gb.dim(w) != dim)
                    return "dim differs at " + tri(s, f, w) + ": " + std::to_string(gb.dim(w)) + " vs " +
                           std::to_string(dim);
                if (gb.tau_rank(w) != rk)
                    return "tau rank differs at " + tri(s, f, w) + ": " + std::to_string(gb.tau_rank(w)) + " vs " +
                           std::to_string(rk);
            }
        }
    return cells ? "equal" : "empty region";
}

std::string check_cobar(Workspace& ws, const std::string& preset, int T, int F)
{
    CobarOptions o;
    o.t_max = T;
    o.f_max = F;
    o.max_cells = 12'000'000;
    auto tab = cobar_ext_dims(MotivicProfile::preset(preset, T), o);
    const ExtTable ext(ws.resolution(preset));
    for (int t = 0; t <= T; ++t)
        for (int f = 0; f <= F && f <= t; ++f) {
            auto [lo, hi] = tab.weights(t);
            const auto& g = ext.group(t - f, f);
            lo = std::min(lo, g.w_low());
            hi = std::max(hi, g.w_high());
            for (int w = lo - 1; w <= hi + 1; ++w)
                if (tab.dim(t - f, f, w) != g.dim(w))
                    return "differs at " + tri(t - f, f, w) + ": cobar " + std::to_string(tab.dim(t - f, f, w)) +
                           ", resolution " + std::to_string(g.dim(w));
        }
    return "equal";
}

std::string check_resume(const std::string& preset, int stem, int f)
{
    const int cap = stem + f + 2;
    Resolution full(MotivicProfile::preset(preset, cap));
    full.extend(stem, f);
    Resolution part(MotivicProfile::preset(preset, cap));
    part.extend(stem / 2, f / 2);
    std::stringstream buf;
    part.save(buf);
    Resolution resumed = Resolution::load(buf);
    resumed.extend(stem, f);
    Resolution threaded(MotivicProfile::preset(preset, cap));
    threaded.extend(stem, f, 4);
    if (!resumed.same_as(full))
        return "resumed run differs";
    if (!threaded.same_as(full))
        return "threaded run differs";
    return "identical";
}

std::string check_massey_choices(Workspace& ws, const ExtClass& a, const ExtClass& b, const ExtClass& c, int seeds)
{
    const Resolution& A = ws.resolution("A");
    const ExtTable& ext = ws.namer("A").ext();
    Coset base = massey(A, a, b, c);
    for (int i = 1; i <= seeds; ++i) {
        Coset other = massey(A, a, b, c, {static_cast<uint64_t>(i) * 7919});
        if (!coset_contains(ext, base, other.representative))
            return "seed " + std::to_string(i) + " leaves the coset";
    }
    return "within indeterminacy";
}

}  // namespace

std::tuple<int, int, int> expression_degree(const std::string& ring, const std::string& expr)
{
    // first term decides; terms of one expression share a degree
    std::string term = expr.substr(0, expr.find('+'));
    int s = 0, f = 0, w = 0;
    std::istringstream is(term);
    std::string tok;
    while (is >> tok) {
        std::string name = tok;
        int k = 1;
        if (auto hat = tok.find('^'); hat != std::string::npos) {
            name = tok.substr(0, hat);
            k = std::stoi(tok.substr(hat + 1));
        }
        if (name == "tau") {
            w -= k;
            continue;
        }
        const NameEntry* e = find_entry(ring, name);
        if (!e)
            throw NamingError("unknown name '" + name + "' over " + ring);
        s += k * e->s;
        f += k * e->f;
        w += k * e->w;
    }
    return {s, f, w};
}

void require_for(Workspace& ws, const ManifestEntry& e)
{
    auto need_ring = [&](const std::string& ring, int s, int f) {
        ws.require(ring, s, f);
        if (ring == "B")
            ws.require("A2", s, f);
    };
    auto need_restrict = [&](int s, int f) {
        need_ring("A", s, f);
        need_ring("B", s, f);
    };
    const std::string& c = e.check;
    if (c == "splitting") {
        need_ring("B", e.int_arg("stem"), e.int_arg("f"));
    } else if (c == "cobar") {
        ws.require(e.arg("algebra"), e.int_arg("t_max"), e.int_arg("f_max"));
    } else if (c == "relation" || c == "class" || c == "square") {
        auto [s, f, w] = expression_degree(e.arg("ring"), e.args.count("lhs") ? e.arg("lhs") : e.arg("expr"));
        if (c == "square") {
            s *= 2;
            f *= 2;
        }
        need_ring(e.arg("ring"), s + 1, f);
    } else if (c == "restrict") {
        auto [s, f, w] = expression_degree("A", e.arg("expr"));
        need_restrict(s + 1, f);
    } else if (c == "restrict_image") {
        need_restrict(e.int_arg("s") + 1, e.int_arg("f"));
    } else if (c == "mahowald_factor" || c == "indeterminacy") {
        auto [s, f, w] = expression_degree("A", e.arg("x"));
        need_restrict(s + 46, f + 6);
    } else if (c == "unit_bracket") {
        need_restrict(46, 7);
    } else if (c == "massey_choices") {
        auto [s, f, w] = expression_degree("A", e.arg("x"));
        ws.require("A", s + 46, f + 6);
    } else if (c == "massey_choices_small") {
        ws.require("A", 4, 3);
    }
}

CheckOutcome run_check(Workspace& ws, const ManifestEntry& e)
{
    CheckOutcome out;
    out.entry = e;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const std::string& c = e.check;
        std::string r;
        if (c == "hopf_axioms") {
            const int t = e.int_arg("t_max");
            auto rep = check_hopf_axioms(MotivicProfile::preset(e.arg("algebra"), t), t);
            r = rep.pass ? "pass" : "fail: " + rep.law + " at " + rep.witness;
        } else if (c == "primitive") {
            const std::string g = e.arg("generator");
            if (g.size() < 4 || g.substr(0, 3) != "tau")
                throw std::invalid_argument("primitive: generator must be tau<i>");
            r = is_primitive(MotivicProfile::preset(e.arg("algebra"), 40), Monomial::tau_gen(std::stoi(g.substr(3))))
                    ? "true"
                    : "false";
        } else if (c == "splitting") {
            r = check_splitting(ws, e.int_arg("stem"), e.int_arg("f"));
        } else if (c == "cobar") {
            r = check_cobar(ws, e.arg("algebra"), e.int_arg("t_max"), e.int_arg("f_max"));
        } else if (c == "relation") {
            const Namer& n = ws.namer(e.arg("ring"));
            r = n.ext().equal(n.eval(e.arg("lhs")), n.eval(e.arg("rhs"))) ? "equal" : "different";
        } else if (c == "class") {
            const Namer& n = ws.namer(e.arg("ring"));
            r = nonzero_at(n.ext(), n.eval(e.arg("expr")), e.expected.find(" at ") != std::string::npos);
        } else if (c == "square") {
            const Namer& n = ws.namer(e.arg("ring"));
            ExtClass x = n.eval(e.arg("expr"));
            r = n.ext().equal(product(n.resolution(), x, x), n.eval(e.arg("rhs"))) ? "equal" : "different";
        } else if (c == "restrict") {
            r = ws.namer("B").describe(ws.restriction()(ws.namer("A").eval(e.arg("expr"))));
        } else if (c == "restrict_image") {
            const Namer& na = ws.namer("A");
            const Namer& nb = ws.namer("B");
            const int s = e.int_arg("s"), f = e.int_arg("f"), w = e.int_arg("w");
            ExtClass target = nb.eval(e.arg("value"));
            const auto& gb = nb.ext().group(s, f);
            f2::BitMatrix m(gb.dim(w));
            for (const auto& b : na.ext().group(s, f).basis(w))
                m.push_row(*gb.coordinates(ws.restriction()(ExtClass{s, f, w, b}).cocycle, w));
            auto coords = gb.coordinates(target.cocycle, w);
            if (target.s != s || target.f != f || target.w != w || !coords)
                r = "value has the wrong degree";
            else
                r = f2::solve(m, *coords) ? "contained" : "not contained";
        } else if (c == "mahowald_factor" || c == "indeterminacy") {
            const Namer& na = ws.namer("A");
            const Namer& nb = ws.namer("B");
            ExtClass x = na.get(e.arg("x"));
            Coset m = mahowald(na.resolution(), na.get("g2"), x);
            const auto& p = ws.restriction();
            if (c == "mahowald_factor") {
                ExtClass rhs = product(nb.resolution(), nb.eval("e0 v3^2 + h1^3 v3^3"), p(x));
                r = nb.ext().equal(p(m.representative), rhs) ? "equal" : "different";
            } else {
                r = "restricts to zero";
                for (const auto& i : m.indeterminacy)
                    if (!nb.ext().is_zero(p(i)))
                        r = "nonzero restriction";
            }
        } else if (c == "unit_bracket") {
            const Namer& na = ws.namer("A");
            ExtClass z = toda_bracket_unit(*ws.restriction().phi(), na.get("g2"), na.eval("h0^3"));
            r = ws.namer("B").describe(z);
        } else if (c == "dd_zero") {
            r = "ok";
            for (const auto& p : ws.presets()) {
                auto bad = ws.resolution(p).check_dd_zero();
                if (!bad.empty()) {
                    r = p + ": d∘d nonzero at " + bad;
                    break;
                }
            }
        } else if (c == "resume") {
            r = check_resume(e.arg("algebra"), e.int_arg("stem"), e.int_arg("f"));
        } else if (c == "massey_choices") {
            const Namer& na = ws.namer("A");
            r = check_massey_choices(ws, na.get("g2"), na.eval("h0^3"), na.get(e.arg("x")), e.int_arg("seeds"));
        } else if (c == "massey_choices_small") {
            const Namer& na = ws.namer("A");
            r = check_massey_choices(ws, na.get("h0"), na.get("h1"), na.get("h0"), e.int_arg("seeds"));
        } else {
            throw std::invalid_argument("unknown check kind '" + c + "'");
        }
        out.computed = r;
        out.pass = r == e.expected;
    }
    catch (const std::exception& ex) {
        out.computed = std::string("error: ") + ex.what();
        out.pass = false;
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

std::vector<CheckOutcome> run_suite(Workspace& ws, const std::vector<ManifestEntry>& manifest, const std::string& suite,
                                    const std::function<void(const CheckOutcome&)>& on_each)
{
    std::vector<const ManifestEntry*> picked;
    for (const auto& e : manifest)
        if (e.in_suite(suite))
            picked.push_back(&e);
    if (picked.empty())
        throw std::invalid_argument("no checks in suite '" + suite + "'");
    for (const auto* e : picked)
        require_for(ws, *e);
    ws.prepare();
    std::vector<CheckOutcome> out;
    for (const auto* e : picked) {
        out.push_back(run_check(ws, *e));
        if (on_each)
            on_each(out.back());
    }
    return out;
}

}  // namespace motext
