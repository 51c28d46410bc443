#pragma once

#include <span>
#include <vector>

namespace cognoma {

/// Power fractions of a NOMA superposition, largest first. Entries are the
/// squared amplitude coefficients, so they sum to one.
class PowerSplit
{
  public:
    PowerSplit() = default;
    /// Throws ConfigError unless entries are >= 0, non-increasing, and sum to 1 within 1e-9.
    explicit PowerSplit(std::vector<double> fractions);

    const std::vector<double>& fractions() const { return fractions_; }
    std::size_t size() const { return fractions_.size(); }
    double operator[](std::size_t i) const { return fractions_[i]; }
    /// Sum of the fractions after position `i`: the residual intra-NOMA interference at stage i.
    double tail(std::size_t i) const;

    bool operator==(const PowerSplit&) const = default;

  private:
    std::vector<double> fractions_;
};

/// Target rate in bps/Hz and the fraction of the resource the message occupies.
struct RateTarget
{
    double rate = 0.0;
    double prelog = 1.0;

    /// Throws ConfigError on rate < 0 or prelog outside (0, 1].
    static RateTarget make(double rate, double prelog = 1.0);

    RateTarget with_prelog(double prelog) const { return make(rate, prelog); }

    bool operator==(const RateTarget&) const = default;
};

struct SicStage
{
    int signal_id = 0;
    double sinr = 0.0;
    double threshold = 0.0;
};

using SicChain = std::vector<SicStage>;

/// Linear SINR threshold 2^(rate/prelog) - 1.
double threshold(const RateTarget& target);

/// Per-stage SINRs at a downlink receiver with power gain `gain`, decoding the
/// superposition largest fraction first. Stage j sees the not-yet-cancelled
/// fractions as interference plus `inr` and unit noise.
std::vector<double> sinr_downlink_noma(const PowerSplit& split, double gain, double rho,
                                       double inr);

/// Per-stage SINRs at an uplink receiver decoding the given received powers in order.
std::vector<double> sinr_uplink_noma(std::span<const double> received_powers, double inr);

/// Stage k succeeds iff its SINR meets its threshold and every earlier stage succeeded.
std::vector<bool> decode_chain(std::span<const SicStage> chain);

/// True iff every stage of the chain decodes.
bool chain_succeeds(std::span<const SicStage> chain);

/// Maximal ratio combining of independent branches. Throws UsageError on empty input.
double mrc_combine(std::span<const double> sinrs);

/// End-to-end SNR of a variable-gain amplify-and-forward cascade.
double af_effective_snr(double hop1_snr, double hop2_snr);

}  // namespace cognoma
