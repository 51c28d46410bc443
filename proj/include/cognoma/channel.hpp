#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cognoma {

/// Average power gain of one named link, e.g. {"ST->SR1", 1.0}.
struct LinkStat
{
    std::string link_id;
    double mean_gain = 0.0;

    bool operator==(const LinkStat&) const = default;
};

/// An ordered set of links with unique ids. The order fixes the order in
/// which per-trial gains are drawn, so two topologies with the same links
/// in the same order produce identical draws for the same stream.
class Topology
{
  public:
    Topology() = default;
    explicit Topology(std::vector<LinkStat> links);

    const std::vector<LinkStat>& links() const { return links_; }
    std::size_t size() const { return links_.size(); }
    bool empty() const { return links_.empty(); }

    std::optional<std::size_t> index_of(std::string_view link_id) const;
    bool contains(std::string_view link_id) const { return index_of(link_id).has_value(); }

    bool operator==(const Topology&) const = default;

  private:
    std::vector<LinkStat> links_;
};

/// Counter-based random stream. The sequence produced for (seed, trial_index)
/// depends on nothing else, so trials can be evaluated in any order and on
/// any number of threads.
class RngStream
{
  public:
    RngStream(std::uint64_t seed, std::uint64_t trial_index);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t trial_index() const { return trial_index_; }

    std::uint64_t next_u64();
    /// Uniform on the open interval (0, 1).
    double next_open_unit();

  private:
    std::uint64_t seed_;
    std::uint64_t trial_index_;
    std::uint64_t state_;
};

/// Instantaneous power gains of one trial, aligned with the topology's link order.
struct ChannelDraw
{
    std::vector<double> gains;

    double gain(const Topology& topology, std::string_view link_id) const;

    bool operator==(const ChannelDraw&) const = default;
};

/// Primary-network interference seen by secondary receivers and relays,
/// modeled as extra Gaussian noise of linear power `inr` (noise power is 1).
struct InterferenceModel
{
    enum class Kind
    {
        none,
        fixed_inr
    };

    Kind kind = Kind::none;
    double inr = 0.0;

    static InterferenceModel none() { return {}; }
    static InterferenceModel fixed(double inr);

    /// Linear interference term to add to a receiver's noise.
    double level() const { return kind == Kind::fixed_inr ? inr : 0.0; }

    bool operator==(const InterferenceModel&) const = default;
};

/// Exponentially distributed power gain with the given mean (Rayleigh amplitude).
double sample_rayleigh_gain(double mean_gain, RngStream& stream);

/// One independent draw per link, in topology order.
ChannelDraw draw_scenario_channels(const Topology& topology, RngStream& stream);

/// Convenience overload: draws for trial `trial_index` of a run seeded with `seed`.
ChannelDraw draw_scenario_channels(const Topology& topology, std::uint64_t seed,
                                   std::uint64_t trial_index);

}  // namespace cognoma
