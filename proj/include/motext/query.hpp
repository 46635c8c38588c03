#pragma once

// Queries on named classes over a Workspace: each one declares the region it
// needs, prepares the workspace and answers with names resolved back.

#include "motext/verify.hpp"

#include <string>
#include <vector>

namespace motext {

struct NamedValue {
    int s = 0, f = 0, w = 0;
    std::string value;  // described with Namer::describe
};

struct BracketValue {
    int s = 0, f = 0, w = 0;
    std::string value;  // canonical representative
    size_t indeterminacy_rank = 0;
};

struct MahowaldValue {
    int s = 0, f = 0, w = 0;
    bool nonzero = false;
    std::string restriction;  // p*(M^k x) over B
    bool factors = false;     // p*(M^k x) = (e0 v3^2 + h1^3 v3^3)^k p*(x), indeterminacy restricting to 0
};

/// Product of expressions over ring (A, A2 or B).
NamedValue query_product(Workspace& ws, const std::string& ring, const std::vector<std::string>& factors);
/// <a, b, c> over ring.
BracketValue query_massey(Workspace& ws, const std::string& ring, const std::string& a, const std::string& b,
                          const std::string& c);
/// p* of an expression over A.
NamedValue query_restrict(Workspace& ws, const std::string& expr);
/// M^k x for an expression x over A.
MahowaldValue query_mahowald(Workspace& ws, const std::string& expr, int k = 1);

}  // namespace motext
