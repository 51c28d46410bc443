#include "cognoma/noma.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "cognoma/errors.hpp"

namespace cognoma {

PowerSplit::PowerSplit(std::vector<double> fractions) : fractions_(std::move(fractions))
{
    if (fractions_.empty())
        throw ConfigError("power split must have at least one fraction");
    double sum = 0.0;
    for (std::size_t i = 0; i < fractions_.size(); ++i)
    {
        const double a = fractions_[i];
        if (!std::isfinite(a) || a < 0.0)
            throw ConfigError("power fraction " + std::to_string(i) + " must be finite and >= 0");
        if (i > 0 && a > fractions_[i - 1])
            throw ConfigError("power fractions must be non-increasing");
        sum += a;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ConfigError("power fractions sum to " + std::to_string(sum) + ", expected 1");
}

double PowerSplit::tail(std::size_t i) const
{
    return std::accumulate(fractions_.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                           fractions_.end(), 0.0);
}

RateTarget RateTarget::make(double rate, double prelog)
{
    if (!std::isfinite(rate) || rate < 0.0)
        throw ConfigError("target rate must be finite and >= 0");
    if (!(prelog > 0.0 && prelog <= 1.0))
        throw ConfigError("prelog must lie in (0, 1]");
    return {rate, prelog};
}

double threshold(const RateTarget& target)
{
    return std::exp2(target.rate / target.prelog) - 1.0;
}

std::vector<double> sinr_downlink_noma(const PowerSplit& split, double gain, double rho,
                                       double inr)
{
    const double received = rho * gain;
    std::vector<double> sinrs(split.size());
    for (std::size_t j = 0; j < split.size(); ++j)
        sinrs[j] = split[j] * received / (received * split.tail(j) + inr + 1.0);
    return sinrs;
}

std::vector<double> sinr_uplink_noma(std::span<const double> received_powers, double inr)
{
    std::vector<double> sinrs(received_powers.size());
    double remaining = 0.0;  // powers still undecoded after stage k
    for (std::size_t k = received_powers.size(); k-- > 0;)
    {
        sinrs[k] = received_powers[k] / (remaining + inr + 1.0);
        remaining += received_powers[k];
    }
    return sinrs;
}

std::vector<bool> decode_chain(std::span<const SicStage> chain)
{
    std::vector<bool> ok(chain.size(), false);
    for (std::size_t k = 0; k < chain.size(); ++k)
    {
        if (chain[k].sinr < chain[k].threshold)
            break;
        ok[k] = true;
    }
    return ok;
}

bool chain_succeeds(std::span<const SicStage> chain)
{
    for (const auto& stage : chain)
    {
        if (stage.sinr < stage.threshold)
            return false;
    }
    return true;
}

double mrc_combine(std::span<const double> sinrs)
{
    if (sinrs.empty())
        throw UsageError("mrc_combine needs at least one branch");
    return std::accumulate(sinrs.begin(), sinrs.end(), 0.0);
}

double af_effective_snr(double hop1_snr, double hop2_snr)
{
    return hop1_snr * hop2_snr / (hop1_snr + hop2_snr + 1.0);
}

}  // namespace cognoma
