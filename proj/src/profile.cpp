#include "motext/profile.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace motext {

int rseq_degree(const RSeq& r)
{
    int t = 0;
    for (int i = 0; i < kMaxIndex; ++i)
        t += r[i] * ((2 << i) - 1);
    return t;
}

int rseq_weight(const RSeq& r, Mode mode)
{
    if (mode == Mode::classical)
        return 0;
    int w = 0;
    for (int i = 0; i < kMaxIndex; ++i) {
        // r_{i+1} = tau_i exponent + 2 * xi_{i+1} exponent
        w += (r[i] & 1) * ((1 << i) - 1) + (r[i] >> 1) * ((2 << i) - 1);
    }
    return w;
}

std::string rseq_to_string(const RSeq& r)
{
    int last = kMaxIndex - 1;
    while (last >= 0 && r[last] == 0)
        --last;
    std::ostringstream os;
    os << "Sq(";
    for (int i = 0; i <= last; ++i)
        os << (i ? "," : "") << r[i];
    os << ")";
    return os.str();
}

MotivicProfile MotivicProfile::from_heights(Mode mode, const std::vector<uint32_t>& tau_heights,
                                            const std::vector<uint32_t>& xi_heights, int degree_cap)
{
    if (tau_heights.size() > kMaxIndex || xi_heights.size() > kMaxIndex)
        throw std::invalid_argument("profile has more generators than supported");
    MotivicProfile p;
    p.mode = mode;
    p.degree_cap = degree_cap;
    p.xi_heights.fill(1);
    for (size_t i = 0; i < tau_heights.size(); ++i) {
        if (tau_heights[i] != 0 && tau_heights[i] != 1 && tau_heights[i] != 2)
            throw std::invalid_argument("tau heights must be 0 (absent) or 2 (present)");
        p.tau_heights[i] = tau_heights[i] == 2 ? 2 : 0;
    }
    for (size_t i = 0; i < xi_heights.size(); ++i)
        p.xi_heights[i] = xi_heights[i] == 0 ? 1 : xi_heights[i];
    p.validate();
    return p;
}

MotivicProfile MotivicProfile::classical_from_zeta(const std::vector<uint32_t>& zeta_heights, int degree_cap)
{
    std::vector<uint32_t> tau(zeta_heights.size(), 0), xi(zeta_heights.size(), 1);
    for (size_t i = 0; i < zeta_heights.size(); ++i) {
        uint32_t h = zeta_heights[i];
        if (h == kUnbounded) {
            tau[i] = 2;
            xi[i] = kUnbounded;
        }
        else if (h >= 2) {
            tau[i] = 2;
            xi[i] = h / 2;
        }
    }
    return from_heights(Mode::classical, tau, xi, degree_cap);
}

MotivicProfile MotivicProfile::preset(const std::string& name, int degree_cap)
{
    std::string base = name;
    Mode mode = Mode::motivic;
    const std::string suffix = "-classical";
    if (base.size() > suffix.size() && base.compare(base.size() - suffix.size(), suffix.size(), suffix) == 0) {
        mode = Mode::classical;
        base.resize(base.size() - suffix.size());
    }
    std::vector<uint32_t> tau, xi;
    if (base == "A") {
        tau.assign(kMaxIndex, 2);
        xi.assign(kMaxIndex, kUnbounded);
    }
    else if (base == "A2") {
        tau = {2, 2, 2};
        xi = {4, 2};
    }
    else if (base == "B") {
        tau = {2, 2, 2, 2};
        xi = {4, 2};
    }
    else if (base == "E-tau3") {
        tau = {0, 0, 0, 2};
    }
    else {
        throw std::invalid_argument("unknown profile preset: " + name);
    }
    return from_heights(mode, tau, xi, degree_cap);
}

bool MotivicProfile::allows(const RSeq& r) const
{
    for (int i = 0; i < kMaxIndex; ++i) {
        if ((r[i] & 1) && !tau_present(i))
            return false;
        if (xi_heights[i] != kUnbounded && static_cast<uint32_t>(r[i] >> 1) >= xi_heights[i])
            return false;
    }
    return true;
}

bool MotivicProfile::contained_in(const MotivicProfile& other) const
{
    if (mode != other.mode)
        return false;
    for (int i = 0; i < kMaxIndex; ++i) {
        if (tau_heights[i] > other.tau_heights[i])
            return false;
        if (other.xi_heights[i] != kUnbounded && (xi_heights[i] == kUnbounded || xi_heights[i] > other.xi_heights[i]))
            return false;
    }
    return true;
}

void MotivicProfile::validate() const
{
    if (degree_cap < 0)
        throw std::invalid_argument("degree cap must be non-negative");
    for (int i = 0; i < kMaxIndex; ++i) {
        uint32_t h = xi_heights[i];
        if (h != kUnbounded && (h == 0 || !std::has_single_bit(h)))
            throw std::invalid_argument("xi heights must be powers of 2 or unbounded");
        // tau_i^2 = tau xi_{i+1}: dropping tau_i forces dropping xi_{i+1}
        if (!tau_present(i) && h != 1)
            throw std::invalid_argument("xi_" + std::to_string(i + 1) + " present while tau_" + std::to_string(i) +
                                        " is absent");
    }
}

std::string MotivicProfile::describe() const
{
    std::ostringstream os;
    os << (mode == Mode::motivic ? "motivic" : "classical") << " tau=(";
    for (int i = 0; i < kMaxIndex; ++i)
        os << (i ? "," : "") << int(tau_heights[i]);
    os << ") xi=(";
    for (int i = 0; i < kMaxIndex; ++i) {
        os << (i ? "," : "");
        if (xi_heights[i] == kUnbounded)
            os << "inf";
        else
            os << xi_heights[i];
    }
    os << ") cap=" << degree_cap;
    return os.str();
}

}  // namespace motext
