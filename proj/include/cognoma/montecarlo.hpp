#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cognoma/schemes.hpp"

namespace cognoma {

struct Interval
{
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval for `failures` out of `trials` at two-sided `confidence`.
Interval wilson_interval(std::uint64_t failures, std::uint64_t trials, double confidence);

struct OutageEstimate
{
    std::string user;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    double confidence = 0.95;

    bool operator==(const OutageEstimate&) const = default;
};

struct RunOptions
{
    /// Threads evaluating trials. Results do not depend on it.
    unsigned workers = 1;
    double confidence = 0.95;
};

/// Runs `trials` independent draws of cfg's topology and reports per-user outage
/// at cfg.rho. Trial t always uses the random stream (seed, t).
std::vector<OutageEstimate> estimate_outage(const ScenarioConfig& cfg, std::uint64_t trials,
                                            std::uint64_t seed, const RunOptions& options = {});

struct SweepRow
{
    double snr_db = 0.0;
    Scheme scheme = Scheme::underlay_direct;
    OutageEstimate estimate;

    bool operator==(const SweepRow&) const = default;
};

/// Rows sorted by (scheme name, user, snr_db), one per triple.
struct SweepTable
{
    std::vector<SweepRow> rows;

    bool operator==(const SweepTable&) const = default;
};

/// Evaluates the config at every grid point, reusing the same per-trial draws
/// across the grid, so each user's outage estimate is non-increasing in SNR
/// whenever the scheme's per-draw outcome is monotone in rho.
SweepTable sweep_snr(const ScenarioConfig& cfg_template, std::span<const double> snr_grid_db,
                     std::uint64_t trials, std::uint64_t seed, const RunOptions& options = {});

/// Sweeps several configs and merges the rows into one sorted table.
SweepTable sweep_snr(std::span<const ScenarioConfig> configs, std::span<const double> snr_grid_db,
                     std::uint64_t trials, std::uint64_t seed, const RunOptions& options = {});

double db_to_linear(double db);

}  // namespace cognoma
