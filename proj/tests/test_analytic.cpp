#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "cognoma/analytic.hpp"

using namespace cognoma;
using namespace cognoma::analytic;
using doctest::Approx;

namespace {

// Reference values computed at 30 significant digits.
constexpr double kP2p0dB = 0.632120558828557678;
constexpr double kP2p10dB = 0.0951625819640404268;
constexpr double kP2p20dB = 0.00995016625083194643;
constexpr double kWeak10dB = 0.0561213794937300457;
constexpr double kStrong10dB = 0.187067160580390916;
constexpr double kWeak20dB = 0.00575912241392875861;
constexpr double kStrong20dB = 0.0204976849696945628;

double tolerance(double p, double trials)
{
    return std::max(3.0 * std::sqrt(p * (1.0 - p) / trials), 1e-3);
}

// Plain two-user SIC on unit-mean Rayleigh links, independent of the library.
TwoUserOutage brute_force_two_user(double rho, int trials, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> exp1(1.0);
    const double gamma = std::sqrt(2.0) - 1.0;
    int weak_fail = 0, strong_fail = 0;
    for (int t = 0; t < trials; ++t)
    {
        const double gs = exp1(rng), gw = exp1(rng);
        const double xs = rho * gs, xw = rho * gw;
        weak_fail += (0.8 * xw / (0.2 * xw + 1.0) < gamma) ? 1 : 0;
        const bool s1 = 0.8 * xs / (0.2 * xs + 1.0) >= gamma;
        strong_fail += (s1 && 0.2 * xs >= gamma) ? 0 : 1;
    }
    return {static_cast<double>(strong_fail) / trials, static_cast<double>(weak_fail) / trials};
}

}  // namespace

TEST_SUITE("analytic")
{
    TEST_CASE("point-to-point closed form")
    {
        const auto rate1 = RateTarget::make(1.0, 1.0);
        CHECK(p2p_rayleigh_outage({1.0, 1.0, rate1}) == Approx(kP2p0dB).epsilon(1e-14));
        CHECK(p2p_rayleigh_outage({1.0, 10.0, rate1}) == Approx(kP2p10dB).epsilon(1e-14));
        CHECK(p2p_rayleigh_outage({1.0, 100.0, rate1}) == Approx(kP2p20dB).epsilon(1e-14));
    }

    TEST_CASE("point-to-point limits")
    {
        CHECK(p2p_rayleigh_outage({1.0, 10.0, RateTarget::make(0.0, 1.0)}) == 0.0);
        CHECK(p2p_rayleigh_outage({1.0, 0.0, RateTarget::make(1.0, 1.0)}) == 1.0);
        CHECK(p2p_rayleigh_outage({0.0, 10.0, RateTarget::make(1.0, 1.0)}) == 1.0);
        CHECK(p2p_rayleigh_outage({0.0, 10.0, RateTarget::make(0.0, 1.0)}) == 0.0);
        CHECK(p2p_rayleigh_outage({1.0, std::numeric_limits<double>::infinity(),
                                   RateTarget::make(1.0, 1.0)}) == 0.0);
        CHECK(p2p_rayleigh_outage({1.0, 1e300, RateTarget::make(1.0, 1.0)}) < 1e-290);
    }

    TEST_CASE("point-to-point monotonicity")
    {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(0.01, 10.0);
        for (int i = 0; i < 10000; ++i)
        {
            const double g = u(rng), rho = u(rng) * 10.0, r = u(rng) / 3.0;
            const double p = p2p_rayleigh_outage({g, rho, RateTarget::make(r, 1.0)});
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
            CHECK(p2p_rayleigh_outage({g, rho * 1.5, RateTarget::make(r, 1.0)}) <= p);
            CHECK(p2p_rayleigh_outage({g * 1.5, rho, RateTarget::make(r, 1.0)}) <= p);
            CHECK(p2p_rayleigh_outage({g, rho, RateTarget::make(r * 1.5, 1.0)}) >= p);
        }
    }

    TEST_CASE("two-user downlink closed form")
    {
        const PowerSplit split({0.8, 0.2});
        const auto r = RateTarget::make(0.5, 1.0);
        auto p = downlink_noma_two_user_outage(split, 1.0, 1.0, 10.0, r, r);
        CHECK(p.weak == Approx(kWeak10dB).epsilon(1e-13));
        CHECK(p.strong == Approx(kStrong10dB).epsilon(1e-13));
        p = downlink_noma_two_user_outage(split, 1.0, 1.0, 100.0, r, r);
        CHECK(p.weak == Approx(kWeak20dB).epsilon(1e-13));
        CHECK(p.strong == Approx(kStrong20dB).epsilon(1e-13));
    }

    TEST_CASE("two-user closed form agrees with an independent brute force")
    {
        const PowerSplit split({0.8, 0.2});
        const auto r = RateTarget::make(0.5, 1.0);
        const int trials = 1'000'000;
        for (double rho : {10.0, 100.0})
        {
            const auto exact = downlink_noma_two_user_outage(split, 1.0, 1.0, rho, r, r);
            const auto mc = brute_force_two_user(rho, trials, 2718);
            CHECK(std::abs(mc.weak - exact.weak) <= tolerance(exact.weak, trials));
            CHECK(std::abs(mc.strong - exact.strong) <= tolerance(exact.strong, trials));
        }
    }

    TEST_CASE("infeasible weak threshold gives certain outage")
    {
        const PowerSplit split({0.5, 0.5});
        const auto r = RateTarget::make(1.0, 1.0);
        for (double rho : {1.0, 100.0, 1e8, 1e300})
        {
            const auto p = downlink_noma_two_user_outage(split, 1.0, 1.0, rho, r, r);
            CHECK(p.weak == 1.0);
            CHECK(p.strong == 1.0);
        }
    }

    TEST_CASE("high SNR drives both outages to zero")
    {
        const PowerSplit split({0.8, 0.2});
        const auto r = RateTarget::make(0.5, 1.0);
        const auto p = downlink_noma_two_user_outage(split, 1.0, 1.0, 1e12, r, r);
        CHECK(p.weak < 1e-11);
        CHECK(p.strong < 1e-11);
    }

    TEST_CASE("strong user is no better than interference-free single-user decoding")
    {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> u(0.05, 5.0);
        const PowerSplit split({0.8, 0.2});
        for (int i = 0; i < 10000; ++i)
        {
            const double gs = u(rng), gw = u(rng), rho = u(rng) * 100.0;
            const auto rs = RateTarget::make(u(rng) / 5.0, 1.0);
            const auto rw = RateTarget::make(u(rng) / 5.0, 1.0);
            const auto p = downlink_noma_two_user_outage(split, gs, gw, rho, rs, rw);
            CHECK(p.strong >= p2p_rayleigh_outage({gs, 0.2 * rho, rs}) - 1e-15);
            CHECK(p.strong >= 0.0);
            CHECK(p.weak <= 1.0);
        }
    }
}
