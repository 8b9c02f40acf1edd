#ifndef FUCHSNF_ERRORS_HPP
#define FUCHSNF_ERRORS_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "multi_index.hpp"

namespace fuchsnf
{

// Where a shifted homological solve broke down: order n, integer shift k,
// component j (0-based) and, when known, the offending multi-index.
struct ResonanceInfo {
    unsigned order = 0;
    unsigned shift = 0;
    std::size_t component = 0;
    std::optional<MultiIndex> multi_index;
    // |k + m.lambda - lambda_j| at the failing eigenvalue, or the reciprocal
    // condition estimate when the alarm was the conditioning test.
    double margin = 0.0;
    bool ill_conditioned = false;
};

class ResonanceSingular : public std::runtime_error
{
public:
    explicit ResonanceSingular(ResonanceInfo info)
        : std::runtime_error(describe(info)), info_(std::move(info))
    {
    }

    const ResonanceInfo &info() const noexcept
    {
        return info_;
    }

private:
    static std::string describe(const ResonanceInfo &info)
    {
        std::string s = "resonance at order " + std::to_string(info.order) + ", shift k=" + std::to_string(info.shift)
                        + ", component j=" + std::to_string(info.component + 1);
        if (info.ill_conditioned) {
            s += " (condition number alarm)";
        }
        return s;
    }

    ResonanceInfo info_;
};

class InvalidSystem : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Integrator or quadrature failure: step collapse, escape, non-integrable endpoints.
class NumericalFailure : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace fuchsnf

#endif
