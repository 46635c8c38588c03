#include "motext/query.hpp"

namespace motext {

namespace {

void need(Workspace& ws, const std::string& ring, int s, int f)
{
    ws.require(ring, s, f);
    if (ring == "B")
        ws.require("A2", s, f);
}

std::pair<int, int> total_degree(const std::string& ring, const std::vector<std::string>& exprs)
{
    int s = 0, f = 0;
    for (const auto& x : exprs) {
        auto [a, b, c] = expression_degree(ring, x);
        s += a;
        f += b;
    }
    return {s, f};
}

void check_ring(const std::string& ring)
{
    if (ring != "A" && ring != "A2" && ring != "B")
        throw NamingError("named classes are available over A, A2 and B, not " + ring);
}

}  // namespace

NamedValue query_product(Workspace& ws, const std::string& ring, const std::vector<std::string>& factors)
{
    check_ring(ring);
    if (factors.empty())
        throw NamingError("product of nothing");
    auto [s, f] = total_degree(ring, factors);
    need(ws, ring, s + 1, f);
    ws.prepare();
    const Namer& n = ws.namer(ring);
    ExtClass acc = n.eval(factors.front());
    for (size_t i = 1; i < factors.size(); ++i)
        acc = product(n.resolution(), acc, n.eval(factors[i]));
    return {acc.s, acc.f, acc.w, n.describe(acc)};
}

BracketValue query_massey(Workspace& ws, const std::string& ring, const std::string& a, const std::string& b,
                          const std::string& c)
{
    check_ring(ring);
    auto [s, f] = total_degree(ring, {a, b, c});
    need(ws, ring, s + 2, f);
    ws.prepare();
    const Namer& n = ws.namer(ring);
    Coset m = massey(n.resolution(), n.eval(a), n.eval(b), n.eval(c));
    return {m.s(), m.f(), m.w(), n.describe(canonical_representative(n.ext(), m)), indeterminacy_rank(n.ext(), m)};
}

NamedValue query_restrict(Workspace& ws, const std::string& expr)
{
    auto [s, f, w] = expression_degree("A", expr);
    need(ws, "A", s + 1, f);
    need(ws, "B", s + 1, f);
    ws.prepare();
    ExtClass y = ws.restriction()(ws.namer("A").eval(expr));
    return {y.s, y.f, y.w, ws.namer("B").describe(y)};
}

MahowaldValue query_mahowald(Workspace& ws, const std::string& expr, int k)
{
    if (k < 1)
        throw YonedaError("M^k needs k >= 1");
    auto [s, f, w] = expression_degree("A", expr);
    need(ws, "A", s + 46 * k, f + 6 * k);
    need(ws, "B", s + 46 * k, f + 6 * k);
    ws.prepare();
    const Namer& na = ws.namer("A");
    const Namer& nb = ws.namer("B");
    const auto& p = ws.restriction();
    ExtClass x = na.eval(expr);
    Coset m = mahowald(na.resolution(), na.get("g2"), x, k);
    ExtClass pm = p(m.representative);
    MahowaldValue out{m.s(), m.f(), m.w(), !na.ext().is_zero(m.representative), nb.describe(pm), false};
    ExtClass z = power(nb.resolution(), nb.eval("e0 v3^2 + h1^3 v3^3"), k);
    out.factors = nb.ext().equal(pm, product(nb.resolution(), z, p(x)));
    for (const auto& i : m.indeterminacy)
        out.factors = out.factors && nb.ext().is_zero(p(i));
    return out;
}

}  // namespace motext
