#include "cognoma/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "cognoma/errors.hpp"

namespace cognoma {

namespace {

// failures[g * users + u] for grid point g and user u.
std::vector<std::uint64_t> count_failures(const SchemeEvaluator& evaluator,
                                          std::span<const double> rhos, std::uint64_t trials,
                                          std::uint64_t seed, unsigned workers)
{
    const std::size_t users = evaluator.users().size();
    const Topology& topology = evaluator.config().topology;

    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint64_t> counts(rhos.size() * users, 0);
        TrialOutcome outcome;
        for (std::uint64_t t = begin; t < end; ++t)
        {
            const ChannelDraw draw = draw_scenario_channels(topology, seed, t);
            for (std::size_t g = 0; g < rhos.size(); ++g)
            {
                evaluator.evaluate_into(draw, rhos[g], outcome);
                for (std::size_t u = 0; u < users; ++u)
                    counts[g * users + u] += outcome.users[u].outage ? 1 : 0;
            }
        }
        return counts;
    };

    const std::uint64_t chunks = std::clamp<std::uint64_t>(workers, 1, trials);
    if (chunks == 1)
        return run_range(0, trials);

    std::vector<std::vector<std::uint64_t>> partial(chunks);
    std::vector<std::exception_ptr> errors(chunks);
    {
        std::vector<std::jthread> threads;
        threads.reserve(chunks);
        for (std::uint64_t c = 0; c < chunks; ++c)
        {
            const std::uint64_t begin = trials * c / chunks;
            const std::uint64_t end = trials * (c + 1) / chunks;
            threads.emplace_back([&, c, begin, end] {
                try
                {
                    partial[c] = run_range(begin, end);
                }
                catch (...)
                {
                    errors[c] = std::current_exception();
                }
            });
        }
    }
    for (const auto& error : errors)
    {
        if (error)
            std::rethrow_exception(error);
    }
    std::vector<std::uint64_t> total(rhos.size() * users, 0);
    for (const auto& counts : partial)
    {
        for (std::size_t i = 0; i < total.size(); ++i)
            total[i] += counts[i];
    }
    return total;
}

OutageEstimate make_estimate(std::string user, std::uint64_t failures, std::uint64_t trials,
                             double confidence)
{
    OutageEstimate e;
    e.user = std::move(user);
    e.trials = trials;
    e.failures = failures;
    e.p_hat = static_cast<double>(failures) / static_cast<double>(trials);
    const Interval ci = wilson_interval(failures, trials, confidence);
    e.ci_low = ci.low;
    e.ci_high = ci.high;
    e.confidence = confidence;
    return e;
}

void check_run(std::uint64_t trials, const RunOptions& options)
{
    if (trials < 1)
        throw UsageError("need at least one trial");
    if (!(options.confidence > 0.0 && options.confidence < 1.0))
        throw UsageError("confidence level must lie in (0, 1)");
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

Interval wilson_interval(std::uint64_t failures, std::uint64_t trials, double confidence)
{
    if (trials < 1 || failures > trials)
        throw UsageError("wilson_interval needs 0 <= failures <= trials and trials >= 1");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw UsageError("confidence level must lie in (0, 1)");

    const double z =
        boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + confidence / 2.0);
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(failures) / n;
    const double z2n = z * z / n;
    const double center = (p + z2n / 2.0) / (1.0 + z2n);
    const double half = z / (1.0 + z2n) * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n));

    Interval ci{std::clamp(center - half, 0.0, 1.0), std::clamp(center + half, 0.0, 1.0)};
    if (failures == 0)
        ci.low = 0.0;
    if (failures == trials)
        ci.high = 1.0;
    ci.low = std::min(ci.low, p);
    ci.high = std::max(ci.high, p);
    return ci;
}

std::vector<OutageEstimate> estimate_outage(const ScenarioConfig& cfg, std::uint64_t trials,
                                            std::uint64_t seed, const RunOptions& options)
{
    check_run(trials, options);
    const SchemeEvaluator evaluator(cfg);
    const double rho = cfg.rho;
    const auto failures = count_failures(evaluator, std::span(&rho, 1), trials, seed, options.workers);

    std::vector<OutageEstimate> out;
    for (std::size_t u = 0; u < evaluator.users().size(); ++u)
        out.push_back(make_estimate(evaluator.users()[u], failures[u], trials, options.confidence));
    return out;
}

SweepTable sweep_snr(const ScenarioConfig& cfg_template, std::span<const double> snr_grid_db,
                     std::uint64_t trials, std::uint64_t seed, const RunOptions& options)
{
    return sweep_snr(std::span(&cfg_template, 1), snr_grid_db, trials, seed, options);
}

SweepTable sweep_snr(std::span<const ScenarioConfig> configs, std::span<const double> snr_grid_db,
                     std::uint64_t trials, std::uint64_t seed, const RunOptions& options)
{
    check_run(trials, options);
    if (snr_grid_db.empty())
        throw UsageError("SNR grid is empty");
    for (std::size_t g = 0; g < snr_grid_db.size(); ++g)
    {
        if (!std::isfinite(snr_grid_db[g]) || (g > 0 && snr_grid_db[g] <= snr_grid_db[g - 1]))
            throw UsageError("SNR grid must be finite and strictly increasing");
    }

    std::vector<double> rhos(snr_grid_db.size());
    std::transform(snr_grid_db.begin(), snr_grid_db.end(), rhos.begin(), db_to_linear);

    SweepTable table;
    for (const auto& cfg : configs)
    {
        const SchemeEvaluator evaluator(cfg);
        const auto failures = count_failures(evaluator, rhos, trials, seed, options.workers);
        const std::size_t users = evaluator.users().size();
        for (std::size_t g = 0; g < rhos.size(); ++g)
        {
            for (std::size_t u = 0; u < users; ++u)
            {
                table.rows.push_back({snr_grid_db[g], cfg.scheme,
                                      make_estimate(evaluator.users()[u], failures[g * users + u],
                                                    trials, options.confidence)});
            }
        }
    }

    std::stable_sort(table.rows.begin(), table.rows.end(), [](const SweepRow& a, const SweepRow& b) {
        const auto sa = to_string(a.scheme);
        const auto sb = to_string(b.scheme);
        if (sa != sb)
            return sa < sb;
        if (a.estimate.user != b.estimate.user)
            return a.estimate.user < b.estimate.user;
        return a.snr_db < b.snr_db;
    });
    for (std::size_t i = 1; i < table.rows.size(); ++i)
    {
        const auto& a = table.rows[i - 1];
        const auto& b = table.rows[i];
        if (a.scheme == b.scheme && a.estimate.user == b.estimate.user && a.snr_db == b.snr_db)
            throw UsageError("duplicate scheme " + std::string(to_string(a.scheme)) +
                             " in sweep; rows would collide");
    }
    return table;
}

}  // namespace cognoma
