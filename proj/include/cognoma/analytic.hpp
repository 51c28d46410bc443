#pragma once

#include "cognoma/noma.hpp"

namespace cognoma::analytic {

// Closed-form outage probabilities under Rayleigh fading, used to check the
// Monte Carlo engine on sub-cases where they exist.

struct P2PSpec
{
    double mean_gain = 1.0;
    double rho = 1.0;
    RateTarget target;
};

/// Single link: P(rho * g < gamma) with g exponential of mean `mean_gain`.
double p2p_rayleigh_outage(const P2PSpec& spec);

struct TwoUserOutage
{
    double strong = 1.0;
    double weak = 1.0;
};

/// Two-user downlink NOMA with fixed roles. `split` is {weak-role fraction,
/// strong-role fraction}. The strong user must first decode the weak user's
/// signal, then its own; the weak user decodes its own signal treating the
/// other as interference.
TwoUserOutage downlink_noma_two_user_outage(const PowerSplit& split, double mean_gain_strong,
                                            double mean_gain_weak, double rho,
                                            const RateTarget& rate_strong,
                                            const RateTarget& rate_weak);

}  // namespace cognoma::analytic
