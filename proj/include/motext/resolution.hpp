#pragma once

// Free resolutions of the ground module over a profile algebra.
//
// A free module F_f in internal degree t is presented by the F2-space V(f,t)
// spanned by pairs (generator g, Milnor basis element m) with t_g + t_m = t.
// A pair has weight w_g + w_m. The M2-module in bidegree (t, w) is the span of
// the pairs of weight <= w, each multiplied by the matching power of tau, so
// multiplication by tau is the inclusion of one weight slice into the next.
// Differentials are single F2 matrices on these spaces that preserve the
// weight filtration.

#include "motext/f2.hpp"
#include "motext/milnor.hpp"
#include "motext/profile.hpp"

#include <functional>
#include <iosfwd>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace motext {

struct Generator {
    uint32_t id = 0;  // index within its filtration
    int f = 0;
    int t = 0;
    int w = 0;
    int s() const { return t - f; }
    friend bool operator==(const Generator&, const Generator&) = default;
};

/// m · g with m a global Milnor id of the resolution's algebra.
struct ModuleTerm {
    uint32_t gen = 0;
    uint32_t milnor = 0;
    friend auto operator<=>(const ModuleTerm&, const ModuleTerm&) = default;
};
/// Sorted, duplicate-free list of terms.
using ModuleElement = std::vector<ModuleTerm>;

/// Coordinates of V(f,t) in canonical order: pair weight ascending, then
/// generator index, then Milnor index within its degree.
struct Slice {
    int f = 0;
    int t = 0;
    std::vector<uint32_t> gen;
    std::vector<uint32_t> milnor;
    std::vector<int> weight;
    std::vector<uint32_t> gen_offset;  // per generator with t_g <= t
    std::vector<uint32_t> coord_of;    // gen_offset[g] + local(m) -> coordinate

    size_t size() const { return gen.size(); }
    uint32_t coord(uint32_t g, uint32_t milnor_local) const { return coord_of[gen_offset[g] + milnor_local]; }
    /// Number of coordinates of weight <= w.
    size_t prefix(int w) const;
};

class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Resolution {
public:
    explicit Resolution(const MotivicProfile& profile);

    const MotivicProfile& profile() const { return profile_; }
    const MilnorAlgebra& algebra() const { return *alg_; }
    std::shared_ptr<const MilnorAlgebra> algebra_ptr() const { return alg_; }
    Mode mode() const { return profile_.mode; }

    using Progress = std::function<void(int f, int t)>;
    /// Completes every step (f, t) with f <= max_f + 1 and t <= max_stem + max_f,
    /// so that Ext is available for s <= max_stem, f <= max_f.
    void extend(int max_stem, int max_f, int threads = 1, const Progress& progress = {});

    /// Largest t completed in filtration f (-1 when none).
    int frontier(int f) const { return f >= 0 && f < static_cast<int>(frontier_.size()) ? frontier_[f] : -1; }
    const std::vector<int>& frontier() const { return frontier_; }
    /// Largest t completed in every filtration <= max_gen_f().
    int max_t() const;
    /// Largest filtration with a completed step.
    int max_gen_f() const { return static_cast<int>(frontier_.size()) - 1; }
    /// Step (f, t) is complete.
    bool covers_step(int f, int t) const { return t >= 0 && t <= frontier(f); }
    /// Ext at (s, f) is computable.
    bool covers_ext(int s, int f) const
    {
        return s >= 0 && f >= 0 && covers_step(f + 1, s + f) && covers_step(f, s + f);
    }
    /// Throws ResolutionError naming the bounds needed.
    void require_ext(int s, int f) const;

    size_t num_filtrations() const { return gens_.size(); }
    size_t num_generators(int f) const { return f < static_cast<int>(gens_.size()) ? gens_[f].size() : 0; }
    size_t total_generators() const;
    const Generator& generator(int f, uint32_t idx) const { return gens_[f][idx]; }
    const std::vector<Generator>& generators(int f) const { return gens_[f]; }
    /// Generator indices [first, second) of filtration f in internal degree t.
    std::pair<uint32_t, uint32_t> generators_in_degree(int f, int t) const;
    /// d of a generator of filtration f >= 1 (an element of F_{f-1}).
    const ModuleElement& differential(int f, uint32_t idx) const { return d_[f][idx]; }
    /// Power of tau carried by a term of d(g).
    int tau_power(int f, uint32_t g, const ModuleTerm& term) const;

    /// Canonical coordinates of V(f, t); requires covers_step(f, t).
    const Slice& slice(int f, int t) const;
    f2::BitVector to_vector(int f, int t, const ModuleElement& x) const;
    ModuleElement from_vector(int f, int t, const f2::BitVector& v) const;
    /// m · x for x in F_f (m a Milnor id of this algebra).
    ModuleElement act(uint32_t milnor, const ModuleElement& x) const;
    /// d applied to an element of F_f, f >= 1.
    ModuleElement apply_d(int f, const ModuleElement& x) const;
    /// Row of d_f at the pair (g, m) as a vector on V(f-1, t).
    f2::BitVector image_row(int f, int t, uint32_t g, uint32_t milnor) const;

    /// Elimination of the rows of d_f : V(f,t) -> V(f-1,t), in canonical order,
    /// with combinations tracked (for solving d x = y). Cached under a memory
    /// budget; f >= 1.
    std::shared_ptr<const f2::Eliminator> image(int f, int t) const;
    void set_cache_budget(size_t bytes) const;

    /// Exhaustive d∘d = 0 check over the completed region; returns the first
    /// offending generator as "f:idx" or an empty string.
    std::string check_dd_zero() const;

    /// Binary checkpoint (layout in docs/checkpoint.md).
    void save(std::ostream& out) const;
    static Resolution load(std::istream& in);
    void save_file(const std::string& path) const;
    static Resolution load_file(const std::string& path);

    /// Same profile, region, generators and differentials.
    bool same_as(const Resolution& other) const;

private:
    struct Kernel {
        int w;
        f2::BitVector v;
    };
    std::vector<Kernel> step(int f, int t, const std::vector<Kernel>& incoming, bool replay, int threads);
    void ensure_filtration(int f);
    Slice build_slice(int f, int t) const;

    MotivicProfile profile_;
    std::shared_ptr<const MilnorAlgebra> alg_;
    std::vector<std::vector<Generator>> gens_;
    std::vector<std::vector<ModuleElement>> d_;
    std::vector<int> frontier_;

    struct Cache {
        std::mutex mutex;
        std::map<std::pair<int, int>, std::shared_ptr<const Slice>> slices;
        std::list<std::pair<std::pair<int, int>, std::shared_ptr<const f2::Eliminator>>> lru;
        size_t bytes = 0;
        size_t budget = size_t{1} << 30;
    };
    std::unique_ptr<Cache> cache_ = std::make_unique<Cache>();
};

}  // namespace motext
