#include "cognoma/channel.hpp"

#include <cmath>
#include <unordered_set>

#include "cognoma/errors.hpp"

namespace cognoma {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void check_mean_gain(double mean_gain, std::string_view link_id)
{
    if (!std::isfinite(mean_gain) || mean_gain < 0.0)
    {
        std::string msg = "mean gain must be finite and >= 0";
        if (!link_id.empty())
            msg += " (link " + std::string(link_id) + ")";
        throw ConfigError(msg);
    }
}

}  // namespace

Topology::Topology(std::vector<LinkStat> links) : links_(std::move(links))
{
    std::unordered_set<std::string_view> seen;
    for (const auto& link : links_)
    {
        if (link.link_id.empty())
            throw ConfigError("link id must not be empty");
        if (!seen.insert(link.link_id).second)
            throw ConfigError("duplicate link id " + link.link_id);
        check_mean_gain(link.mean_gain, link.link_id);
    }
}

std::optional<std::size_t> Topology::index_of(std::string_view link_id) const
{
    for (std::size_t i = 0; i < links_.size(); ++i)
    {
        if (links_[i].link_id == link_id)
            return i;
    }
    return std::nullopt;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t trial_index)
    : seed_(seed),
      trial_index_(trial_index),
      state_(mix64(mix64(seed ^ 0x632BE59BD9B4E019ULL) ^ mix64(trial_index + kGoldenGamma)))
{
}

std::uint64_t RngStream::next_u64()
{
    state_ += kGoldenGamma;
    return mix64(state_);
}

double RngStream::next_open_unit()
{
    // 53 random bits centered in their bucket: never 0, never 1.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double ChannelDraw::gain(const Topology& topology, std::string_view link_id) const
{
    auto index = topology.index_of(link_id);
    if (!index || *index >= gains.size())
        throw ConfigError("no gain for link " + std::string(link_id));
    return gains[*index];
}

InterferenceModel InterferenceModel::fixed(double inr)
{
    if (!std::isfinite(inr) || inr < 0.0)
        throw ConfigError("interference-to-noise ratio must be finite and >= 0");
    return {Kind::fixed_inr, inr};
}

double sample_rayleigh_gain(double mean_gain, RngStream& stream)
{
    check_mean_gain(mean_gain, {});
    // Always consume one value so the stream position does not depend on the mean.
    const double u = stream.next_open_unit();
    return mean_gain * -std::log(u);
}

ChannelDraw draw_scenario_channels(const Topology& topology, RngStream& stream)
{
    if (topology.empty())
        throw ConfigError("topology has no links");
    ChannelDraw draw;
    draw.gains.reserve(topology.size());
    for (const auto& link : topology.links())
        draw.gains.push_back(sample_rayleigh_gain(link.mean_gain, stream));
    return draw;
}

ChannelDraw draw_scenario_channels(const Topology& topology, std::uint64_t seed,
                                   std::uint64_t trial_index)
{
    RngStream stream(seed, trial_index);
    return draw_scenario_channels(topology, stream);
}

}  // namespace cognoma
