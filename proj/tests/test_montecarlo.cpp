#include <doctest.h>

#include <cmath>
#include <vector>

#include "cognoma/analytic.hpp"
#include "cognoma/errors.hpp"
#include "cognoma/montecarlo.hpp"
#include "cognoma/scenario_io.hpp"

using namespace cognoma;
using doctest::Approx;

namespace {

// A single PR link served alone: the point-to-point case.
ScenarioConfig p2p_config(double rho)
{
    ScenarioConfig cfg;
    cfg.scheme = Scheme::oma_tdma;
    cfg.topology = Topology({{"BS->PR", 1.0}});
    cfg.rates = {{"PR", 1.0}};
    cfg.num_srs = 0;
    cfg.rho = rho;
    return cfg;
}

ScenarioConfig zero_gains(ScenarioConfig cfg)
{
    std::vector<LinkStat> links(cfg.topology.links().begin(), cfg.topology.links().end());
    for (auto& l : links)
        l.mean_gain = 0.0;
    cfg.topology = Topology(std::move(links));
    return cfg;
}

}  // namespace

TEST_SUITE("montecarlo")
{
    TEST_CASE("Wilson interval")
    {
        const auto ci = wilson_interval(500, 1000, 0.95);
        CHECK(ci.low == Approx(0.469069600368104184).epsilon(1e-12));
        CHECK(ci.high == Approx(0.530930399631895816).epsilon(1e-12));
        CHECK(wilson_interval(0, 1000, 0.95).low == 0.0);
        CHECK(wilson_interval(0, 1000, 0.95).high > 0.0);
        CHECK(wilson_interval(1000, 1000, 0.95).high == 1.0);
        CHECK(wilson_interval(1, 1, 0.95).low < 1.0);
        CHECK_THROWS_AS(wilson_interval(2, 1, 0.95), UsageError);
        CHECK_THROWS_AS(wilson_interval(0, 0, 0.95), UsageError);
        CHECK_THROWS_AS(wilson_interval(1, 2, 1.0), UsageError);
    }

    TEST_CASE("Wilson interval always brackets the point estimate")
    {
        for (std::uint64_t n : {1u, 2u, 7u, 100u, 100000u})
        {
            for (std::uint64_t f = 0; f <= n; f += std::max<std::uint64_t>(1, n / 50))
            {
                for (double conf : {0.5, 0.9, 0.95, 0.999})
                {
                    const auto ci = wilson_interval(f, n, conf);
                    const double p = static_cast<double>(f) / static_cast<double>(n);
                    CHECK(0.0 <= ci.low);
                    CHECK(ci.low <= p);
                    CHECK(p <= ci.high);
                    CHECK(ci.high <= 1.0);
                }
            }
        }
    }

    TEST_CASE("all-zero gains put every user in outage")
    {
        for (auto name : preset_names())
        {
            for (const auto& cfg : preset(name))
            {
                for (const auto& e : estimate_outage(zero_gains(cfg), 100, 1))
                {
                    CAPTURE(e.user);
                    CHECK(e.p_hat == 1.0);
                    CHECK(e.failures == 100);
                }
            }
        }
    }

    TEST_CASE("point-to-point estimate matches the closed form")
    {
        const std::uint64_t trials = 1'000'000;
        for (double snr_db : {0.0, 10.0, 20.0})
        {
            const double rho = db_to_linear(snr_db);
            const double p =
                analytic::p2p_rayleigh_outage({1.0, rho, RateTarget::make(1.0, 1.0)});
            RunOptions opt;
            opt.workers = 4;
            const auto est = estimate_outage(p2p_config(rho), trials, 2024, opt);
            REQUIRE(est.size() == 1);
            const double tol = std::max(3.0 * std::sqrt(p * (1.0 - p) / trials), 1e-3);
            CHECK(std::abs(est[0].p_hat - p) <= tol);
        }
    }

    TEST_CASE("estimates are deterministic and partition invariant")
    {
        const auto cfg = preset("overlay")[1];
        const auto base = estimate_outage(cfg, 30000, 7);
        CHECK(base == estimate_outage(cfg, 30000, 7));
        for (unsigned w : {2u, 3u, 7u, 16u})
        {
            RunOptions opt;
            opt.workers = w;
            CHECK(base == estimate_outage(cfg, 30000, 7, opt));
        }
        CHECK(base != estimate_outage(cfg, 30000, 8));
    }

    TEST_CASE("more workers than trials")
    {
        RunOptions opt;
        opt.workers = 64;
        CHECK(estimate_outage(p2p_config(10.0), 5, 1, opt) == estimate_outage(p2p_config(10.0), 5, 1));
    }

    TEST_CASE("Wilson coverage over independent replications")
    {
        const double rho = 10.0;
        const double p = analytic::p2p_rayleigh_outage({1.0, rho, RateTarget::make(1.0, 1.0)});
        const auto cfg = p2p_config(rho);
        int covered = 0;
        for (std::uint64_t rep = 0; rep < 1000; ++rep)
        {
            const auto e = estimate_outage(cfg, 10'000, 1'000'000 + rep)[0];
            covered += (e.ci_low <= p && p <= e.ci_high) ? 1 : 0;
        }
        CHECK(covered >= 930);
    }

    TEST_CASE("common random numbers give non-increasing outage along the grid")
    {
        const std::vector<double> grid{0, 5, 10, 15, 20, 25, 30, 35, 40};
        for (auto name : preset_names())
        {
            const auto configs = preset(name);
            const auto table = sweep_snr(configs, grid, 20000, 3);
            REQUIRE(table.rows.size() % grid.size() == 0);
            for (std::size_t i = 1; i < table.rows.size(); ++i)
            {
                const auto& a = table.rows[i - 1];
                const auto& b = table.rows[i];
                if (a.scheme == b.scheme && a.estimate.user == b.estimate.user)
                {
                    CHECK(a.snr_db < b.snr_db);
                    CHECK(b.estimate.p_hat <= a.estimate.p_hat);
                }
            }
        }
    }

    TEST_CASE("sweep rows are sorted and unique")
    {
        const std::vector<double> grid{0, 20};
        const auto table = sweep_snr(preset("crnoma"), grid, 1000, 1);
        CHECK(table.rows.size() == 2 * 3 * 3);
        for (std::size_t i = 1; i < table.rows.size(); ++i)
        {
            const auto& a = table.rows[i - 1];
            const auto& b = table.rows[i];
            const auto ka = std::tuple(std::string(to_string(a.scheme)), a.estimate.user, a.snr_db);
            const auto kb = std::tuple(std::string(to_string(b.scheme)), b.estimate.user, b.snr_db);
            CHECK(ka < kb);
        }
    }

    TEST_CASE("single-point sweep equals estimate_outage")
    {
        auto cfg = preset("underlay")[0];
        const std::vector<double> grid{15.0};
        const auto table = sweep_snr(cfg, grid, 10000, 5);
        cfg.rho = db_to_linear(15.0);
        const auto est = estimate_outage(cfg, 10000, 5);
        REQUIRE(table.rows.size() == est.size());
        for (std::size_t i = 0; i < est.size(); ++i)
            CHECK(table.rows[i].estimate == est[i]);
    }

    TEST_CASE("bad inputs")
    {
        const auto cfg = preset("crnoma")[0];
        CHECK_THROWS_AS(sweep_snr(cfg, std::vector<double>{}, 10, 1), UsageError);
        CHECK_THROWS_AS(sweep_snr(cfg, std::vector<double>{10, 5}, 10, 1), UsageError);
        CHECK_THROWS_AS(sweep_snr(cfg, std::vector<double>{5, 5}, 10, 1), UsageError);
        CHECK_THROWS_AS(estimate_outage(cfg, 0, 1), UsageError);
        const std::vector<ScenarioConfig> twice{cfg, cfg};
        CHECK_THROWS_AS(sweep_snr(twice, std::vector<double>{0}, 10, 1), UsageError);
        auto broken = cfg;
        broken.num_srs = 3;
        CHECK_THROWS_AS(estimate_outage(broken, 10, 1), ConfigError);
    }
}
