#pragma once

// Profiles: finite presentation data for quotients of the dual Steenrod
// algebra, plus the Milnor-basis sequences that index their dual bases.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace motext {

enum class Mode : uint8_t { motivic = 0, classical = 1 };

/// Generators tau_0..tau_{kMaxIndex-1} and xi_1..xi_{kMaxIndex}.
inline constexpr int kMaxIndex = 8;
inline constexpr uint32_t kUnbounded = 0xffffffffU;

struct Bidegree {
    int t = 0;
    int w = 0;
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
    Bidegree operator+(Bidegree o) const { return {t + o.t, w + o.w}; }
};

inline Bidegree tau_bidegree(int i) { return {(2 << i) - 1, (1 << i) - 1}; }
inline Bidegree xi_bidegree(int i) { return {(2 << i) - 2, (1 << i) - 1}; }

/// Exponent sequence R = (r_1, r_2, ...) of a Milnor basis element. In the
/// motivic algebra r_i encodes tau_{i-1}^{r_i mod 2} xi_i^{r_i div 2}; in the
/// classical algebra it is the exponent of zeta_i.
using RSeq = std::array<uint16_t, kMaxIndex>;

int rseq_degree(const RSeq& r);
int rseq_weight(const RSeq& r, Mode mode);
std::string rseq_to_string(const RSeq& r);

struct MotivicProfile {
    Mode mode = Mode::motivic;
    /// tau_heights[i] is 2 when tau_i is present (tau_i^2 rewritten), 0 when absent.
    std::array<uint8_t, kMaxIndex> tau_heights{};
    /// xi_heights[i] bounds the exponent of xi_{i+1}: a power of 2, 1 meaning
    /// absent, or kUnbounded.
    std::array<uint32_t, kMaxIndex> xi_heights{};
    int degree_cap = 0;

    /// Presets: A, A2, B, E-tau3, A-classical, A2-classical, B-classical.
    static MotivicProfile preset(const std::string& name, int degree_cap);
    /// Raw heights; missing trailing entries mean absent. Throws on invalid data.
    static MotivicProfile from_heights(Mode mode, const std::vector<uint32_t>& tau_heights,
                                       const std::vector<uint32_t>& xi_heights, int degree_cap);
    /// Classical profile from zeta heights (zeta_i^{h_i} = 0).
    static MotivicProfile classical_from_zeta(const std::vector<uint32_t>& zeta_heights, int degree_cap);

    bool tau_present(int i) const { return tau_heights[i] == 2; }
    bool allows(const RSeq& r) const;
    /// Indexwise heights at most other's.
    bool contained_in(const MotivicProfile& other) const;
    void validate() const;
    std::string describe() const;

    friend bool operator==(const MotivicProfile&, const MotivicProfile&) = default;
};

}  // namespace motext
