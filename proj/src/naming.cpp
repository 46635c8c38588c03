#include "motext/naming.hpp"

#include <algorithm>
#include <sstream>

namespace motext {

using f2::BitVector;

namespace {

NameEntry gen(std::string name, std::string ring, int s, int f, int w, std::string note)
{
    return {std::move(name), std::move(ring), s, f, w, NameRule::unique, "", 0, true, std::move(note)};
}

NameEntry named(std::string name, std::string ring, int s, int f, int w, NameRule rule, std::string arg,
                std::string note, int k = 0)
{
    return {std::move(name), std::move(ring), s, f, w, rule, std::move(arg), k, false, std::move(note)};
}

std::vector<NameEntry> build_table()
{
    std::vector<NameEntry> t;
    for (const char* ring : {"A", "A2"}) {
        t.push_back(gen("h0", ring, 0, 1, 0, "dual of tau_0"));
        t.push_back(gen("h1", ring, 1, 1, 1, "dual of xi_1"));
        t.push_back(gen("h2", ring, 3, 1, 2, "dual of xi_1^2"));
        t.push_back(gen("c0", ring, 8, 3, 5, "only class in its degree"));
        t.push_back(gen("d0", ring, 14, 4, 8, "only class in its degree"));
        t.push_back(gen("e0", ring, 17, 4, 10, "only class in its degree"));
    }
    t.push_back(gen("h3", "A", 7, 1, 4, "dual of xi_1^4"));
    t.push_back(gen("h4", "A", 15, 1, 8, "dual of xi_1^8"));
    t.push_back(gen("h5", "A", 31, 1, 16, "dual of xi_1^16"));
    t.push_back(gen("Ph1", "A", 9, 5, 5, "only class in its degree"));
    t.push_back(gen("Ph2", "A", 11, 5, 6, "only class in its degree"));
    t.push_back(gen("taug", "A", 20, 4, 11, "only class in its degree; g is not a class over A"));
    t.push_back(gen("g2", "A", 44, 4, 24, "only class in its degree"));
    t.push_back(named("e0g", "A", 37, 8, 22, NameRule::tau_divide, "e0 taug", "tau e0g = e0 taug", 1));
    t.push_back(named("Mh1", "A", 46, 7, 25, NameRule::mahowald, "h1", "<g2, h0^3, h1>"));
    t.push_back(named("Mh2", "A", 48, 7, 26, NameRule::mahowald, "h2", "<g2, h0^3, h2>"));
    t.push_back(named("MP", "A", 53, 10, 28, NameRule::unique, "", "only class in its degree"));
    t.push_back(named("Delta2h1h3", "A", 56, 10, 29, NameRule::unique, "", "only class in its degree"));
    t.push_back(named("B4", "A", 60, 9, 32, NameRule::unique, "", "only class in its degree"));
    t.push_back(named("tauB5", "A", 66, 10, 35, NameRule::unique, "", "only class in its degree"));

    t.push_back(gen("P", "A2", 8, 4, 4, "only class in its degree"));
    t.push_back(gen("u", "A2", 11, 3, 7, "only class in its degree; h1^2 e0 = c0 u"));
    t.push_back(gen("a", "A2", 12, 3, 6, "alpha, only class in its degree"));
    t.push_back(gen("n", "A2", 15, 3, 8, "nu, only class in its degree"));
    t.push_back(gen("g", "A2", 20, 4, 12, "only class in its degree; e0^2 = d0 g"));
    t.push_back(named("Pg", "A2", 28, 8, 16, NameRule::expression, "P g", "P g"));

    t.push_back(gen("v3", "B", 14, 1, 7, "only class in its degree"));
    return t;
}

// generator order used when printing monomials
const std::vector<std::string>& print_order()
{
    static const std::vector<std::string> order = {"P", "h0", "h1", "h2", "h3", "h4", "h5", "c0", "Ph1", "Ph2", "u",
                                                   "a", "d0", "n", "e0", "taug", "g", "g2", "v3"};
    return order;
}

std::vector<std::string> split_terms(const std::string& expr)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : expr) {
        if (ch == '+') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> split_factors(const std::string& term)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : term) {
        if (ch == ' ' || ch == '*' || ch == '\t') {
            if (!cur.empty())
                out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

std::pair<std::string, int> parse_power(const std::string& factor)
{
    auto hat = factor.find('^');
    if (hat == std::string::npos)
        return {factor, 1};
    const std::string e = factor.substr(hat + 1);
    if (e.empty() || !std::all_of(e.begin(), e.end(), ::isdigit))
        throw NamingError("bad exponent in '" + factor + "'");
    return {factor.substr(0, hat), std::stoi(e)};
}

}  // namespace

const std::vector<NameEntry>& naming_table()
{
    static const std::vector<NameEntry> table = build_table();
    return table;
}

std::vector<NameEntry> naming_entries(const std::string& ring)
{
    std::vector<NameEntry> out;
    for (const auto& e : naming_table())
        if (e.ring == ring)
            out.push_back(e);
    return out;
}

std::string ring_of_preset(const std::string& preset)
{
    if (preset == "A" || preset == "A2" || preset == "B")
        return preset;
    return "";
}

Namer::Namer(const Resolution& r, std::string ring, const Resolution* quotient)
    : r_(&r), ring_(std::move(ring)), ext_(r), entries_(naming_entries(ring_))
{
    if (ring_ == "B" && quotient) {
        quotient_ = std::make_unique<Namer>(*quotient, "A2");
        inflate_ = std::make_unique<ChangeOfRings>(r, *quotient);
        for (const auto& e : naming_entries("A2")) {
            NameEntry b = e;
            b.ring = "B";
            entries_.push_back(b);
        }
    }
    for (const auto& name : print_order())
        for (const auto& e : entries_)
            if (e.name == name && e.generator)
                gens_.push_back(e);
}

bool Namer::knows(const std::string& name) const
{
    return std::any_of(entries_.begin(), entries_.end(), [&](const NameEntry& e) { return e.name == name; });
}

ExtClass Namer::get(const std::string& name) const
{
    if (auto it = cache_.find(name); it != cache_.end())
        return it->second;
    for (const auto& e : entries_)
        if (e.name == name) {
            ExtClass x = lookup(e);
            cache_.emplace(name, x);
            return x;
        }
    throw NamingError("unknown name '" + name + "' over " + ring_);
}

ExtClass Namer::lookup(const NameEntry& e) const
{
    if (e.ring == "B" && quotient_ && quotient_->knows(e.name) && e.name != "v3")
        return (*inflate_)(quotient_->get(e.name));
    const auto& g = ext_.group(e.s, e.f);
    switch (e.rule) {
    case NameRule::unique: {
        if (g.dim(e.w) != 1)
            throw NamingError(e.name + ": expected a unique class, found dimension " + std::to_string(g.dim(e.w)));
        return g.basis_class(e.w, 0);
    }
    case NameRule::expression: {
        ExtClass x = eval(e.arg);
        if (x.s != e.s || x.f != e.f || x.w != e.w)
            throw NamingError(e.name + ": expression lands in the wrong tridegree");
        return x;
    }
    case NameRule::tau_divide: {
        ExtClass target = eval(e.arg);
        const int lw = e.w - e.tau_power;
        if (target.w != lw)
            throw NamingError(e.name + ": target has the wrong weight");
        f2::BitMatrix m(g.dim(lw));
        for (const auto& b : g.basis(e.w))
            m.push_row(*g.coordinates(b, lw));
        if (f2::rank(m) != m.nrows())
            throw NamingError(e.name + ": tau^k is not injective here, the class is not determined");
        auto sol = f2::solve(m, *g.coordinates(target.cocycle, lw));
        if (!sol)
            throw NamingError(e.name + ": target is not divisible by tau");
        return {e.s, e.f, e.w, g.from_coordinates(*sol, e.w)};
    }
    case NameRule::mahowald: {
        Coset c = mahowald(*r_, get("g2"), get(e.arg));
        return canonical_representative(ext_, c);
    }
    }
    throw NamingError("unreachable");
}

ExtClass Namer::eval(const std::string& expr) const
{
    std::optional<ExtClass> sum;
    for (const auto& term : split_terms(expr)) {
        auto factors = split_factors(term);
        if (factors.empty())
            throw NamingError("empty term in '" + expr + "'");
        int taus = 0;
        std::optional<ExtClass> prod;
        for (const auto& fac : factors) {
            auto [name, k] = parse_power(fac);
            if (name == "tau") {
                taus += k;
                continue;
            }
            ExtClass x = get(name);
            for (int j = 0; j < k; ++j)
                prod = prod ? product(*r_, *prod, x) : x;
            if (k == 0 && !prod)
                prod = ExtClass{0, 0, 0, BitVector::unit(1, 0)};
        }
        if (!prod)
            prod = ExtClass{0, 0, 0, BitVector::unit(1, 0)};
        ExtClass v = ext_.tau_times(*prod, taus);
        sum = sum ? add(*sum, v) : v;
    }
    return *sum;
}

ExtClass Namer::monomial_value(const std::vector<int>& exps) const
{
    if (auto it = monomials_.find(exps); it != monomials_.end())
        return it->second;
    size_t last = exps.size();
    for (size_t i = exps.size(); i-- > 0;)
        if (exps[i] > 0) {
            last = i;
            break;
        }
    ExtClass v;
    if (last == exps.size()) {
        v = ExtClass{0, 0, 0, BitVector::unit(1, 0)};
    } else {
        auto rest = exps;
        --rest[last];
        ExtClass base = monomial_value(rest);
        ExtClass x = get(gens_[last].name);
        if (base.f == 0)
            v = x;
        else if (base.cocycle.is_zero())
            v = ext_.zero(base.s + x.s, base.f + x.f, base.w + x.w);
        else
            v = product(*r_, base, x);
    }
    monomials_.emplace(exps, v);
    return v;
}

std::string Namer::describe(const ExtClass& x) const
{
    const auto& g = ext_.group(x.s, x.f);
    auto target = g.coordinates(x.cocycle, x.w);
    if (!target)
        throw NamingError("describe: not a cocycle");
    if (target->is_zero())
        return "0";

    struct Mono {
        std::vector<int> exps;
        int tau = 0;
        std::string text;
        int last_exp = 0;
    };
    std::vector<Mono> monos;
    std::vector<int> exps(gens_.size(), 0);
    auto walk = [&](auto&& self, size_t i, int s, int f, int w) -> void {
        if (s == x.s && f == x.f && w >= x.w) {
            Mono m{exps, w - x.w, "", exps.empty() ? 0 : exps.back()};
            monos.push_back(m);
            return;
        }
        if (i == gens_.size() || f >= x.f || s > x.s)
            return;
        const auto& e = gens_[i];
        self(self, i + 1, s, f, w);
        int k = 0;
        while (s + (k + 1) * e.s <= x.s && f + (k + 1) * e.f <= x.f) {
            ++k;
            exps[i] = k;
            self(self, i + 1, s + k * e.s, f + k * e.f, w + k * e.w);
        }
        exps[i] = 0;
    };
    walk(walk, 0, 0, 0, 0);

    for (auto& m : monos) {
        std::ostringstream os;
        if (m.tau)
            os << "tau" << (m.tau > 1 ? "^" + std::to_string(m.tau) : "") << " ";
        for (size_t i = 0; i < m.exps.size(); ++i)
            if (m.exps[i])
                os << gens_[i].name << (m.exps[i] > 1 ? "^" + std::to_string(m.exps[i]) : "") << " ";
        m.text = os.str();
        m.text.pop_back();
    }
    std::stable_sort(monos.begin(), monos.end(), [](const Mono& a, const Mono& b) {
        if (a.tau != b.tau)
            return a.tau < b.tau;
        if (a.last_exp != b.last_exp)
            return a.last_exp < b.last_exp;
        return a.text < b.text;
    });

    f2::Eliminator el(target->size(), monos.size());
    std::vector<size_t> inserted;
    for (size_t i = 0; i < monos.size(); ++i) {
        ExtClass v = ext_.tau_times(monomial_value(monos[i].exps), monos[i].tau);
        auto c = g.coordinates(v.cocycle, x.w);
        if (!c || c->is_zero())
            continue;
        inserted.push_back(i);
        el.insert(*c);
    }
    BitVector combo(monos.size());
    BitVector rest = el.reduce(*target, &combo);
    std::vector<std::string> parts;
    for (size_t j = combo.next_set(0); j != BitVector::npos; j = combo.next_set(j + 1))
        parts.push_back(monos[inserted[j]].text);
    if (!rest.is_zero())
        parts.push_back("[unnamed]");
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i)
        out += (i ? " + " : "") + parts[i];
    return out;
}

}  // namespace motext
