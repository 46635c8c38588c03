#pragma once

// The algebra dual to a profile's quotient of the dual Steenrod algebra,
// presented on its Milnor basis.
//
// The motivic monomial tau^E xi^R corresponds bijectively to the classical
// monomial zeta^(E + 2R) after setting tau = 1, and the coproduct commutes
// with that specialization. Every motivic structure constant is therefore
// tau^k times the classical one, with k fixed by weight. Products here are
// computed with the classical Milnor matrix formula; weights are bookkeeping.

#include "motext/profile.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace motext {

/// Classical Milnor product Sq(R)·Sq(S) as a list of result sequences (each
/// with coefficient 1 mod 2).
std::vector<RSeq> milnor_product_classical(const RSeq& r, const RSeq& s);

class MilnorAlgebra {
public:
    explicit MilnorAlgebra(const MotivicProfile& profile);

    const MotivicProfile& profile() const { return profile_; }
    Mode mode() const { return profile_.mode; }
    int max_degree() const { return profile_.degree_cap; }

    /// Number of basis elements in internal degree t (0 beyond the cap).
    size_t dim(int t) const;
    /// Global id of the i-th basis element of degree t.
    uint32_t id(int t, size_t i) const { return offsets_[t] + static_cast<uint32_t>(i); }
    uint32_t unit() const { return 0; }
    size_t size() const { return elements_.size(); }

    int degree(uint32_t id) const { return degree_[id]; }
    int weight(uint32_t id) const { return weight_[id]; }
    /// Index of id within its degree.
    uint32_t local(uint32_t id) const { return id - offsets_[degree_[id]]; }
    const RSeq& rseq(uint32_t id) const { return elements_[id]; }
    std::optional<uint32_t> find(const RSeq& r) const;

    /// Basis elements whose sum is a·b (memoized; the span stays valid for the
    /// lifetime of the algebra). The tau-power of each term is
    /// weight(a) + weight(b) - weight(term).
    std::span<const uint32_t> multiply(uint32_t a, uint32_t b) const;

    /// Shared instance per profile.
    static std::shared_ptr<const MilnorAlgebra> get(const MotivicProfile& profile);

private:
    struct Block {
        std::vector<uint32_t> start;  // dim_a * dim_b + 1 offsets
        std::vector<uint32_t> data;
    };
    const Block& block(int ta, int tb) const;

    MotivicProfile profile_;
    std::vector<RSeq> elements_;
    std::vector<int> degree_;
    std::vector<int> weight_;
    std::vector<uint32_t> offsets_;  // per degree, size cap + 2
    std::unordered_map<uint64_t, uint32_t> lookup_;
    std::vector<uint32_t> identity_;

    mutable std::mutex mutex_;
    mutable std::vector<std::unique_ptr<Block>> blocks_;  // (ta, tb) row-major
};

}  // namespace motext
