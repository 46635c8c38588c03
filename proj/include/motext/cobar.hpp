#pragma once

// Brute-force Ext from the reduced cobar complex C^f = (augmentation
// coideal)^{⊗f}, with the differential summing the reduced coproduct over
// each tensor factor. Shares only the dual-algebra layer with the resolution
// code, so it serves as an independent check.
//
// Motivically, C^f in bidegree (t, w) is spanned by tau^(w_T - w) T for the
// tensors T of degree t and weight w_T >= w. Below the smallest tensor weight
// the slices stop growing, so dims are constant there.

#include "motext/profile.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace motext {

class CobarResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CobarOptions {
    int t_max = 0;
    int f_max = 0;
    /// Upper bound on the tensors in any one slice C^f(t, w), and on the
    /// stored entries of a reduced coboundary matrix (times 16).
    size_t max_cells = 3'000'000;
    /// Skip slices over the bound instead of throwing.
    bool partial = false;
};

class CobarTable {
public:
    /// Dimension at (s, f, w); throws when (t, f) was skipped or out of range.
    size_t dim(int s, int f, int w) const;
    bool covered(int t, int f) const;
    /// (t, f) pairs left out because of the resource bound.
    const std::vector<std::pair<int, int>>& skipped() const { return skipped_; }
    /// Largest slice processed.
    size_t largest_slice() const { return largest_; }
    /// Weight window stored for degree t; dims below lo equal dims at lo.
    std::pair<int, int> weights(int t) const { return window_.at(t); }
    int t_max() const { return t_max_; }
    int f_max() const { return f_max_; }

private:
    friend CobarTable cobar_ext_dims(const MotivicProfile&, const CobarOptions&);
    int t_max_ = 0, f_max_ = 0;
    std::map<int, std::pair<int, int>> window_;
    // (t, f, w) -> dim, for w in the window
    std::map<std::tuple<int, int, int>, size_t> dims_;
    std::vector<std::pair<int, int>> skipped_;
    size_t largest_ = 0;
};

/// Homology of the reduced cobar complex for t <= t_max, f <= f_max.
CobarTable cobar_ext_dims(const MotivicProfile& p, const CobarOptions& opts);

}  // namespace motext
