#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cognoma/channel.hpp"
#include "cognoma/noma.hpp"

namespace cognoma {

enum class Scheme
{
    underlay_direct,
    underlay_af,
    overlay_direct,
    overlay_coop,
    crnoma_direct,
    crnoma_coop,
    oma_tdma
};

std::string_view to_string(Scheme scheme);
std::optional<Scheme> scheme_from_string(std::string_view name);

/// How NOMA power fractions are attached to secondary receivers.
enum class RoleAssignment
{
    ranked,  // per draw: weakest instantaneous gain gets the largest fraction
    fixed    // SR1 always gets the largest secondary fraction, SR2 the next, ...
};

std::string_view to_string(RoleAssignment roles);
std::optional<RoleAssignment> role_assignment_from_string(std::string_view name);

/// What the forwarding node does in the second slot.
enum class SlotMode
{
    noma,
    oma_primary_only,
    silent
};

std::string_view to_string(SlotMode mode);

/// One experiment. User ids are "PR" and "SR1".."SRn"; transmitters are "PT",
/// "ST" and "BS"; relays are "R" (underlay) or "R1".."RN" (overlay). Link ids
/// join two node ids with "->", e.g. "ST->SR1".
struct ScenarioConfig
{
    Scheme scheme = Scheme::underlay_direct;
    Topology topology;
    PowerSplit split;
    /// Target rates in bps/Hz keyed by user id. Key "SR" is the default for every SR.
    std::map<std::string, double> rates;
    InterferenceModel interference;
    /// Transmit SNR, linear.
    double rho = 1.0;
    int num_relays = 0;
    int num_srs = 0;
    RoleAssignment roles = RoleAssignment::ranked;
    /// Optional interference cap at the PR for underlay transmitters (linear,
    /// relative to noise). Transmit SNR becomes min(rho, cap / g_{tx->PR}).
    std::optional<double> primary_cap;

    /// Target rate of a user, falling back to the "SR" default for secondary users.
    double rate_of(std::string_view user) const;
    /// Users this scheme reports, PR first when present.
    std::vector<std::string> users() const;
    /// Links the scheme reads from every draw.
    std::vector<std::string> required_links() const;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ConfigError naming the offending key when the config is inconsistent.
void validate(const ScenarioConfig& cfg);

struct UserOutage
{
    std::string user;
    bool outage = false;
};

struct TrialOutcome
{
    std::vector<UserOutage> users;
    std::optional<std::string> selected_relay;
    std::optional<SlotMode> slot2_mode;

    /// Throws UsageError if `user` is not part of the outcome.
    bool outage(std::string_view user) const;
};

/// A validated config with its link lookups resolved, for evaluating many draws.
class SchemeEvaluator
{
  public:
    explicit SchemeEvaluator(ScenarioConfig cfg);

    const ScenarioConfig& config() const { return cfg_; }
    const std::vector<std::string>& users() const { return users_; }

    TrialOutcome evaluate(const ChannelDraw& draw, double rho) const;
    TrialOutcome evaluate(const ChannelDraw& draw) const { return evaluate(draw, cfg_.rho); }
    /// Reuses `out`'s storage; `out` must come from this evaluator or be empty.
    void evaluate_into(const ChannelDraw& draw, double rho, TrialOutcome& out) const;

  private:
    void eval_underlay_direct(const ChannelDraw& draw, double rho, TrialOutcome& out) const;
    void eval_underlay_af(const ChannelDraw& draw, double rho, TrialOutcome& out) const;
    void eval_overlay_direct(const ChannelDraw& draw, double rho, TrialOutcome& out) const;
    void eval_overlay_coop(const ChannelDraw& draw, double rho, TrialOutcome& out) const;
    void eval_crnoma_direct(const ChannelDraw& draw, double rho, TrialOutcome& out) const;
    void eval_crnoma_coop(const ChannelDraw& draw, double rho, TrialOutcome& out) const;
    void eval_oma_tdma(const ChannelDraw& draw, double rho, TrialOutcome& out) const;

    // Secondary receivers ordered weakest first (or fixed order), given their gains.
    std::vector<std::size_t> secondary_order(const std::vector<double>& gains) const;
    double capped_rho(double rho, const ChannelDraw& draw, std::optional<std::size_t> link) const;

    ScenarioConfig cfg_;
    std::vector<std::string> users_;
    std::size_t first_sr_ = 0;  // position of SR1 in users_
    double gamma_primary_ = 0.0;
    std::vector<double> gamma_sr_;

    // Link indices into ChannelDraw::gains. Unused ones stay empty.
    std::optional<std::size_t> pt_pr_, pt_st_, st_pr_, st_r_, r_pr_, bs_pr_;
    std::vector<std::size_t> st_sr_, r_sr_, pt_sr_, bs_sr_, sr_pr_;
    std::vector<std::size_t> pt_rn_, st_rn_, rn_pr_;
    std::vector<std::vector<std::size_t>> rn_sr_, sr_sr_;
};

/// Single-draw entry points, one per protocol. Each validates `cfg`, checks that
/// cfg.scheme matches, and evaluates at cfg.rho.
TrialOutcome eval_underlay_direct(const ChannelDraw& draw, const ScenarioConfig& cfg);
TrialOutcome eval_underlay_af(const ChannelDraw& draw, const ScenarioConfig& cfg);
TrialOutcome eval_overlay_direct(const ChannelDraw& draw, const ScenarioConfig& cfg);
TrialOutcome eval_overlay_coop(const ChannelDraw& draw, const ScenarioConfig& cfg);
TrialOutcome eval_crnoma_direct(const ChannelDraw& draw, const ScenarioConfig& cfg);
TrialOutcome eval_crnoma_coop(const ChannelDraw& draw, const ScenarioConfig& cfg);
TrialOutcome eval_oma_tdma(const ChannelDraw& draw, const ScenarioConfig& cfg);

/// Dispatches on cfg.scheme.
TrialOutcome evaluate(const ChannelDraw& draw, const ScenarioConfig& cfg);

std::string sr_id(int index);     // 1-based: "SR1"
std::string relay_id(int index);  // 1-based: "R1"
std::string link_id(std::string_view from, std::string_view to);

}  // namespace cognoma
