#pragma once

// Conventional names for Ext classes. A curated table maps each name to a
// tridegree and a rule that pins the class down; a Namer evaluates names and
// expressions over one resolution and writes classes back as sums of
// monomials in the generator names.
//
// Expressions: terms joined by '+', each a product of factors separated by
// spaces or '*', a factor being a name with an optional ^k, or tau^k.

#include "motext/yoneda.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace motext {

class NamingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class NameRule {
    unique,      // the only class in its tridegree
    expression,  // value of an expression in other names
    tau_divide,  // the unique x with tau^k x equal to an expression
    mahowald,    // M applied to another name
};

struct NameEntry {
    std::string name;
    std::string ring;  // "A", "A2" or "B"
    int s = 0, f = 0, w = 0;
    NameRule rule = NameRule::unique;
    std::string arg;    // expression or argument of M
    int tau_power = 0;  // for tau_divide
    bool generator = false;  // used when writing classes as monomials
    std::string note;  // how the class is pinned down
};

const std::vector<NameEntry>& naming_table();
/// Entries of one ring, in table order.
std::vector<NameEntry> naming_entries(const std::string& ring);
/// Naming ring of a preset: "A", "A2", "B", or empty when no names apply.
std::string ring_of_preset(const std::string& preset);

class Namer {
public:
    /// For ring B, names of A(2) are inflated along B -> A(2); quotient must
    /// then be a resolution over A(2).
    Namer(const Resolution& r, std::string ring, const Resolution* quotient = nullptr);

    const Resolution& resolution() const { return *r_; }
    const ExtTable& ext() const { return ext_; }
    const std::string& ring() const { return ring_; }

    bool knows(const std::string& name) const;
    ExtClass get(const std::string& name) const;
    ExtClass eval(const std::string& expr) const;
    /// x as a sum of monomials in generator names, e.g. "e0 + h1^3 v3";
    /// "0" for zero; a trailing "+ [unnamed]" when outside their span.
    std::string describe(const ExtClass& x) const;

private:
    ExtClass lookup(const NameEntry& e) const;
    ExtClass monomial_value(const std::vector<int>& exps) const;

    const Resolution* r_;
    std::string ring_;
    ExtTable ext_;
    std::unique_ptr<Namer> quotient_;
    std::unique_ptr<ChangeOfRings> inflate_;
    std::vector<NameEntry> entries_;
    std::vector<NameEntry> gens_;
    mutable std::map<std::string, ExtClass> cache_;
    mutable std::map<std::vector<int>, ExtClass> monomials_;
};

}  // namespace motext
