#include "cognoma/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cognoma/errors.hpp"

namespace cognoma::analytic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// P(rho * mean * E < level) for E ~ Exp(1); `level` may be infinite.
double exponential_below(double level, double rho, double mean_gain)
{
    if (level <= 0.0)
        return 0.0;
    const double scale = rho * mean_gain;
    if (!(scale > 0.0) || std::isinf(level))
        return 1.0;
    if (std::isinf(scale))
        return 0.0;
    return std::clamp(-std::expm1(-level / scale), 0.0, 1.0);
}

}  // namespace

double p2p_rayleigh_outage(const P2PSpec& spec)
{
    return exponential_below(threshold(spec.target), spec.rho, spec.mean_gain);
}

TwoUserOutage downlink_noma_two_user_outage(const PowerSplit& split, double mean_gain_strong,
                                            double mean_gain_weak, double rho,
                                            const RateTarget& rate_strong,
                                            const RateTarget& rate_weak)
{
    if (split.size() != 2)
        throw UsageError("two-user outage needs a two-entry power split");
    const double alpha_w = split[0];
    const double alpha_s = split[1];
    const double gamma_w = threshold(rate_weak);
    const double gamma_s = threshold(rate_strong);

    // alpha_w x / (alpha_s x + 1) >= gamma_w  <=>  x >= gamma_w / (alpha_w - gamma_w alpha_s),
    // feasible only below the interference ceiling alpha_w / alpha_s.
    const double margin = alpha_w - gamma_w * alpha_s;
    const double theta_w = gamma_w == 0.0 ? 0.0 : (margin > 0.0 ? gamma_w / margin : kInf);
    const double theta_own =
        gamma_s == 0.0 ? 0.0 : (alpha_s > 0.0 ? gamma_s / alpha_s : kInf);

    TwoUserOutage out;
    out.weak = exponential_below(theta_w, rho, mean_gain_weak);
    out.strong = exponential_below(std::max(theta_w, theta_own), rho, mean_gain_strong);
    return out;
}

}  // namespace cognoma::analytic
