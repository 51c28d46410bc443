#include "cognoma/schemes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "cognoma/errors.hpp"

namespace cognoma {

namespace {

constexpr std::array<std::pair<Scheme, std::string_view>, 7> kSchemeNames{{
    {Scheme::underlay_direct, "underlay_direct"},
    {Scheme::underlay_af, "underlay_af"},
    {Scheme::overlay_direct, "overlay_direct"},
    {Scheme::overlay_coop, "overlay_coop"},
    {Scheme::crnoma_direct, "crnoma_direct"},
    {Scheme::crnoma_coop, "crnoma_coop"},
    {Scheme::oma_tdma, "oma_tdma"},
}};

bool has_primary_user(Scheme scheme)
{
    return scheme != Scheme::underlay_direct && scheme != Scheme::underlay_af;
}

bool is_underlay(Scheme scheme)
{
    return scheme == Scheme::underlay_direct || scheme == Scheme::underlay_af;
}

// Spectral-use fraction of every message in the scheme.
double scheme_prelog(const ScenarioConfig& cfg)
{
    switch (cfg.scheme)
    {
        case Scheme::underlay_direct:
        case Scheme::crnoma_direct:
            return 1.0;
        case Scheme::underlay_af:
        case Scheme::overlay_direct:
        case Scheme::overlay_coop:
        case Scheme::crnoma_coop:
            return 0.5;
        case Scheme::oma_tdma:
            return 1.0 / (1.0 + cfg.num_srs);
    }
    return 1.0;
}

std::size_t expected_split_size(const ScenarioConfig& cfg)
{
    switch (cfg.scheme)
    {
        case Scheme::underlay_direct:
        case Scheme::underlay_af:
            return static_cast<std::size_t>(cfg.num_srs);
        case Scheme::overlay_direct:
        case Scheme::overlay_coop:
            return static_cast<std::size_t>(cfg.num_srs) + 1;
        case Scheme::crnoma_direct:
        case Scheme::crnoma_coop:
            return 2;
        case Scheme::oma_tdma:
            return 0;  // orthogonal; any split is ignored
    }
    return 0;
}

std::size_t require(const Topology& topology, const std::string& id)
{
    auto index = topology.index_of(id);
    if (!index)
        throw ConfigError("missing required link " + id + " (key link." + id + ".mean_gain)");
    return *index;
}

bool meets(double sinr, double gamma) { return sinr >= gamma; }

// Appends the SIC stages a receiver at `position` in `order` runs over the
// secondary part of a downlink superposition. `sinrs[offset + k]` is the SINR of
// secondary signal k; signal k belongs to user order[k].
void append_secondary_stages(SicChain& chain, const std::vector<double>& sinrs,
                             std::size_t offset, const std::vector<std::size_t>& order,
                             std::size_t position, const std::vector<double>& gamma_sr)
{
    for (std::size_t k = 0; k <= position; ++k)
    {
        chain.push_back({static_cast<int>(offset + k), sinrs[offset + k], gamma_sr[order[k]]});
    }
}

std::vector<std::size_t> positions_of(const std::vector<std::size_t>& order)
{
    std::vector<std::size_t> position(order.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        position[order[k]] = k;
    return position;
}

}  // namespace

std::string_view to_string(Scheme scheme)
{
    for (const auto& [value, name] : kSchemeNames)
    {
        if (value == scheme)
            return name;
    }
    return "unknown";
}

std::optional<Scheme> scheme_from_string(std::string_view name)
{
    for (const auto& [value, text] : kSchemeNames)
    {
        if (text == name)
            return value;
    }
    return std::nullopt;
}

std::string_view to_string(RoleAssignment roles)
{
    return roles == RoleAssignment::ranked ? "ranked" : "fixed";
}

std::optional<RoleAssignment> role_assignment_from_string(std::string_view name)
{
    if (name == "ranked")
        return RoleAssignment::ranked;
    if (name == "fixed")
        return RoleAssignment::fixed;
    return std::nullopt;
}

std::string_view to_string(SlotMode mode)
{
    switch (mode)
    {
        case SlotMode::noma:
            return "noma";
        case SlotMode::oma_primary_only:
            return "oma_primary_only";
        case SlotMode::silent:
            return "silent";
    }
    return "unknown";
}

std::string sr_id(int index) { return "SR" + std::to_string(index); }
std::string relay_id(int index) { return "R" + std::to_string(index); }

std::string link_id(std::string_view from, std::string_view to)
{
    std::string id(from);
    id += "->";
    id += to;
    return id;
}

double ScenarioConfig::rate_of(std::string_view user) const
{
    if (auto it = rates.find(std::string(user)); it != rates.end())
        return it->second;
    if (user.starts_with("SR"))
    {
        if (auto it = rates.find("SR"); it != rates.end())
            return it->second;
    }
    throw ConfigError("no target rate for user " + std::string(user) + " (key rate." +
                      std::string(user) + ")");
}

std::vector<std::string> ScenarioConfig::users() const
{
    std::vector<std::string> out;
    if (has_primary_user(scheme))
        out.emplace_back("PR");
    for (int i = 1; i <= num_srs; ++i)
        out.push_back(sr_id(i));
    return out;
}

std::vector<std::string> ScenarioConfig::required_links() const
{
    std::vector<std::string> links;
    auto add = [&](std::string_view a, std::string_view b) { links.push_back(link_id(a, b)); };
    switch (scheme)
    {
        case Scheme::underlay_direct:
            for (int i = 1; i <= num_srs; ++i)
                add("ST", sr_id(i));
            if (primary_cap)
                add("ST", "PR");
            break;
        case Scheme::underlay_af:
            add("ST", "R");
            for (int i = 1; i <= num_srs; ++i)
                add("R", sr_id(i));
            if (primary_cap)
            {
                add("ST", "PR");
                add("R", "PR");
            }
            break;
        case Scheme::overlay_direct:
            add("PT", "PR");
            add("PT", "ST");
            add("ST", "PR");
            for (int i = 1; i <= num_srs; ++i)
            {
                add("PT", sr_id(i));
                add("ST", sr_id(i));
            }
            break;
        case Scheme::overlay_coop:
            add("PT", "PR");
            for (int n = 1; n <= num_relays; ++n)
            {
                add("PT", relay_id(n));
                add("ST", relay_id(n));
                add(relay_id(n), "PR");
                for (int i = 1; i <= num_srs; ++i)
                    add(relay_id(n), sr_id(i));
            }
            break;
        case Scheme::crnoma_direct:
        case Scheme::oma_tdma:
            add("BS", "PR");
            for (int i = 1; i <= num_srs; ++i)
                add("BS", sr_id(i));
            break;
        case Scheme::crnoma_coop:
            add("BS", "PR");
            for (int i = 1; i <= num_srs; ++i)
                add("BS", sr_id(i));
            for (int i = 1; i <= num_srs; ++i)
            {
                add(sr_id(i), "PR");
                for (int j = 1; j <= num_srs; ++j)
                {
                    if (j != i)
                        add(sr_id(i), sr_id(j));
                }
            }
            break;
    }
    return links;
}

void validate(const ScenarioConfig& cfg)
{
    if (!std::isfinite(cfg.rho) || cfg.rho < 0.0)
        throw ConfigError("transmit SNR must be finite and >= 0 (key snr_db)");
    if (cfg.num_srs < 0)
        throw ConfigError("num_srs must be >= 0 (key num_srs)");
    if (cfg.num_relays < 0)
        throw ConfigError("num_relays must be >= 0 (key num_relays)");
    if (cfg.scheme != Scheme::oma_tdma && cfg.num_srs < 1)
        throw ConfigError(std::string(to_string(cfg.scheme)) +
                          " needs at least one secondary receiver (key num_srs)");
    if (cfg.scheme == Scheme::underlay_af && cfg.num_relays != 1)
        throw ConfigError("underlay_af uses exactly one relay R (key num_relays)");
    if (cfg.scheme == Scheme::overlay_coop && cfg.num_relays < 1)
        throw ConfigError("overlay_coop needs at least one relay (key num_relays)");

    if (const auto expected = expected_split_size(cfg);
        cfg.scheme != Scheme::oma_tdma && cfg.split.size() != expected)
    {
        throw ConfigError(std::string(to_string(cfg.scheme)) + " multiplexes " +
                          std::to_string(expected) + " signals but split has " +
                          std::to_string(cfg.split.size()) + " fractions (key split)");
    }

    for (const auto& [user, rate] : cfg.rates)
    {
        if (!std::isfinite(rate) || rate < 0.0)
            throw ConfigError("target rate must be finite and >= 0 (key rate." + user + ")");
    }
    for (const auto& user : cfg.users())
        (void)cfg.rate_of(user);

    if (cfg.interference.kind == InterferenceModel::Kind::none && cfg.interference.inr != 0.0)
        throw ConfigError("interference model none must carry zero INR (key inr_db)");
    if (!std::isfinite(cfg.interference.inr) || cfg.interference.inr < 0.0)
        throw ConfigError("INR must be finite and >= 0 (key inr_db)");
    const bool crnoma_family = cfg.scheme == Scheme::crnoma_direct ||
                               cfg.scheme == Scheme::crnoma_coop || cfg.scheme == Scheme::oma_tdma;
    if (crnoma_family && cfg.interference.level() != 0.0)
        throw ConfigError(std::string(to_string(cfg.scheme)) +
                          " has no primary transmitter to interfere (key inr_db)");

    if (cfg.primary_cap)
    {
        if (!is_underlay(cfg.scheme))
            throw ConfigError("primary interference cap applies to underlay schemes only "
                              "(key primary_cap_db)");
        if (!std::isfinite(*cfg.primary_cap) || *cfg.primary_cap < 0.0)
            throw ConfigError("primary interference cap must be finite and >= 0 "
                              "(key primary_cap_db)");
    }

    for (const auto& id : cfg.required_links())
        (void)require(cfg.topology, id);
}

bool TrialOutcome::outage(std::string_view user) const
{
    for (const auto& u : users)
    {
        if (u.user == user)
            return u.outage;
    }
    throw UsageError("user " + std::string(user) + " not in trial outcome");
}

SchemeEvaluator::SchemeEvaluator(ScenarioConfig cfg) : cfg_(std::move(cfg))
{
    validate(cfg_);
    users_ = cfg_.users();
    first_sr_ = has_primary_user(cfg_.scheme) ? 1 : 0;

    const double prelog = scheme_prelog(cfg_);
    if (has_primary_user(cfg_.scheme))
        gamma_primary_ = threshold(RateTarget::make(cfg_.rate_of("PR"), prelog));
    for (int i = 1; i <= cfg_.num_srs; ++i)
        gamma_sr_.push_back(threshold(RateTarget::make(cfg_.rate_of(sr_id(i)), prelog)));

    const Topology& t = cfg_.topology;
    auto idx = [&](std::string_view a, std::string_view b) { return require(t, link_id(a, b)); };
    auto per_sr = [&](std::string_view from) {
        std::vector<std::size_t> v;
        for (int i = 1; i <= cfg_.num_srs; ++i)
            v.push_back(idx(from, sr_id(i)));
        return v;
    };

    switch (cfg_.scheme)
    {
        case Scheme::underlay_direct:
            st_sr_ = per_sr("ST");
            if (cfg_.primary_cap)
                st_pr_ = idx("ST", "PR");
            break;
        case Scheme::underlay_af:
            st_r_ = idx("ST", "R");
            r_sr_ = per_sr("R");
            if (cfg_.primary_cap)
            {
                st_pr_ = idx("ST", "PR");
                r_pr_ = idx("R", "PR");
            }
            break;
        case Scheme::overlay_direct:
            pt_pr_ = idx("PT", "PR");
            pt_st_ = idx("PT", "ST");
            st_pr_ = idx("ST", "PR");
            pt_sr_ = per_sr("PT");
            st_sr_ = per_sr("ST");
            break;
        case Scheme::overlay_coop:
            pt_pr_ = idx("PT", "PR");
            for (int n = 1; n <= cfg_.num_relays; ++n)
            {
                pt_rn_.push_back(idx("PT", relay_id(n)));
                st_rn_.push_back(idx("ST", relay_id(n)));
                rn_pr_.push_back(idx(relay_id(n), "PR"));
                rn_sr_.push_back(per_sr(relay_id(n)));
            }
            break;
        case Scheme::crnoma_direct:
        case Scheme::oma_tdma:
            bs_pr_ = idx("BS", "PR");
            bs_sr_ = per_sr("BS");
            break;
        case Scheme::crnoma_coop:
            bs_pr_ = idx("BS", "PR");
            bs_sr_ = per_sr("BS");
            for (int i = 1; i <= cfg_.num_srs; ++i)
            {
                sr_pr_.push_back(idx(sr_id(i), "PR"));
                std::vector<std::size_t> row(static_cast<std::size_t>(cfg_.num_srs), 0);
                for (int j = 1; j <= cfg_.num_srs; ++j)
                {
                    if (j != i)
                        row[static_cast<std::size_t>(j - 1)] = idx(sr_id(i), sr_id(j));
                }
                sr_sr_.push_back(std::move(row));
            }
            break;
    }
}

TrialOutcome SchemeEvaluator::evaluate(const ChannelDraw& draw, double rho) const
{
    TrialOutcome out;
    evaluate_into(draw, rho, out);
    return out;
}

void SchemeEvaluator::evaluate_into(const ChannelDraw& draw, double rho, TrialOutcome& out) const
{
    if (draw.gains.size() != cfg_.topology.size())
        throw UsageError("channel draw does not match the scenario topology");
    if (out.users.size() != users_.size())
    {
        out.users.clear();
        for (const auto& u : users_)
            out.users.push_back({u, false});
    }
    for (auto& u : out.users)
        u.outage = false;
    out.selected_relay.reset();
    out.slot2_mode.reset();

    switch (cfg_.scheme)
    {
        case Scheme::underlay_direct:
            return eval_underlay_direct(draw, rho, out);
        case Scheme::underlay_af:
            return eval_underlay_af(draw, rho, out);
        case Scheme::overlay_direct:
            return eval_overlay_direct(draw, rho, out);
        case Scheme::overlay_coop:
            return eval_overlay_coop(draw, rho, out);
        case Scheme::crnoma_direct:
            return eval_crnoma_direct(draw, rho, out);
        case Scheme::crnoma_coop:
            return eval_crnoma_coop(draw, rho, out);
        case Scheme::oma_tdma:
            return eval_oma_tdma(draw, rho, out);
    }
}

std::vector<std::size_t> SchemeEvaluator::secondary_order(const std::vector<double>& gains) const
{
    std::vector<std::size_t> order(gains.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (cfg_.roles == RoleAssignment::ranked)
    {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return gains[a] < gains[b]; });
    }
    return order;
}

double SchemeEvaluator::capped_rho(double rho, const ChannelDraw& draw,
                                   std::optional<std::size_t> link) const
{
    if (!cfg_.primary_cap || !link)
        return rho;
    const double g = draw.gains[*link];
    return g > 0.0 ? std::min(rho, *cfg_.primary_cap / g) : rho;
}

void SchemeEvaluator::eval_underlay_direct(const ChannelDraw& draw, double rho,
                                           TrialOutcome& out) const
{
    const double inr = cfg_.interference.level();
    const double tx_rho = capped_rho(rho, draw, st_pr_);
    std::vector<double> gains(st_sr_.size());
    for (std::size_t i = 0; i < gains.size(); ++i)
        gains[i] = draw.gains[st_sr_[i]];
    const auto order = secondary_order(gains);
    const auto position = positions_of(order);

    SicChain chain;
    for (std::size_t i = 0; i < gains.size(); ++i)
    {
        const auto sinrs = sinr_downlink_noma(cfg_.split, gains[i], tx_rho, inr);
        chain.clear();
        append_secondary_stages(chain, sinrs, 0, order, position[i], gamma_sr_);
        out.users[first_sr_ + i].outage = !chain_succeeds(chain);
    }
}

void SchemeEvaluator::eval_underlay_af(const ChannelDraw& draw, double rho,
                                       TrialOutcome& out) const
{
    const double noise = cfg_.interference.level() + 1.0;
    const double hop1 = capped_rho(rho, draw, st_pr_) * draw.gains[*st_r_] / noise;
    const double relay_rho = capped_rho(rho, draw, r_pr_);

    std::vector<double> gains(r_sr_.size());
    for (std::size_t i = 0; i < gains.size(); ++i)
        gains[i] = draw.gains[r_sr_[i]];
    const auto order = secondary_order(gains);
    const auto position = positions_of(order);

    SicChain chain;
    for (std::size_t i = 0; i < gains.size(); ++i)
    {
        const double hop2 = relay_rho * gains[i] / noise;
        const double effective = af_effective_snr(hop1, hop2);
        // Interference already folded into each hop's noise.
        const auto sinrs = sinr_downlink_noma(cfg_.split, 1.0, effective, 0.0);
        chain.clear();
        append_secondary_stages(chain, sinrs, 0, order, position[i], gamma_sr_);
        out.users[first_sr_ + i].outage = !chain_succeeds(chain);
    }
}

void SchemeEvaluator::eval_overlay_direct(const ChannelDraw& draw, double rho,
                                          TrialOutcome& out) const
{
    const double inr = cfg_.interference.level();
    const double direct_pr = rho * draw.gains[*pt_pr_];

    // Slot 1: PT broadcasts the primary signal; ST must decode it to take part.
    const double st_snr = rho * draw.gains[*pt_st_] / (inr + 1.0);
    if (!meets(st_snr, gamma_primary_))
    {
        out.slot2_mode = SlotMode::silent;
        out.users[0].outage = !meets(direct_pr, gamma_primary_);
        for (std::size_t i = 0; i < st_sr_.size(); ++i)
            out.users[first_sr_ + i].outage = true;
        return;
    }

    // Slot 2: ST superimposes the regenerated primary signal with the SR signals.
    out.slot2_mode = SlotMode::noma;
    const double a0 = cfg_.split[0];
    const double rest = cfg_.split.tail(0);
    const double st_pr = rho * draw.gains[*st_pr_];
    const std::array<double, 2> pr_branches{direct_pr, a0 * st_pr / (rest * st_pr + 1.0)};
    out.users[0].outage = !meets(mrc_combine(pr_branches), gamma_primary_);

    std::vector<double> gains(st_sr_.size());
    for (std::size_t i = 0; i < gains.size(); ++i)
        gains[i] = draw.gains[st_sr_[i]];
    const auto order = secondary_order(gains);
    const auto position = positions_of(order);

    SicChain chain;
    for (std::size_t i = 0; i < gains.size(); ++i)
    {
        const auto sinrs = sinr_downlink_noma(cfg_.split, gains[i], rho, inr);
        const std::array<double, 2> primary_branches{
            rho * draw.gains[pt_sr_[i]] / (inr + 1.0), sinrs[0]};
        chain.clear();
        chain.push_back({0, mrc_combine(primary_branches), gamma_primary_});
        append_secondary_stages(chain, sinrs, 1, order, position[i], gamma_sr_);
        out.users[first_sr_ + i].outage = !chain_succeeds(chain);
    }
}

void SchemeEvaluator::eval_overlay_coop(const ChannelDraw& draw, double rho,
                                        TrialOutcome& out) const
{
    const double inr = cfg_.interference.level();
    const double direct_pr = rho * draw.gains[*pt_pr_];
    const std::size_t num_srs = static_cast<std::size_t>(cfg_.num_srs);

    // Slot 1: uplink NOMA from PT and ST, decoded at every relay primary-first.
    std::optional<std::size_t> full_decoder;
    std::optional<std::size_t> primary_decoder;
    std::vector<double> powers(cfg_.split.size());
    std::vector<double> relay_gains(num_srs);
    SicChain chain;
    for (std::size_t n = 0; n < rn_pr_.size(); ++n)
    {
        powers[0] = cfg_.split[0] * rho * draw.gains[pt_rn_[n]];
        for (std::size_t k = 1; k < powers.size(); ++k)
            powers[k] = cfg_.split[k] * rho * draw.gains[st_rn_[n]];
        const auto sinrs = sinr_uplink_noma(powers, inr);

        for (std::size_t i = 0; i < num_srs; ++i)
            relay_gains[i] = draw.gains[rn_sr_[n][i]];
        const auto order = secondary_order(relay_gains);
        chain.clear();
        chain.push_back({0, sinrs[0], gamma_primary_});
        append_secondary_stages(chain, sinrs, 1, order, num_srs - 1, gamma_sr_);
        const auto ok = decode_chain(chain);

        const double to_pr = draw.gains[rn_pr_[n]];
        if (ok.back() && (!full_decoder || to_pr > draw.gains[rn_pr_[*full_decoder]]))
            full_decoder = n;
        if (ok.front() && (!primary_decoder || to_pr > draw.gains[rn_pr_[*primary_decoder]]))
            primary_decoder = n;
    }

    if (!primary_decoder)
    {
        out.slot2_mode = SlotMode::silent;
        out.users[0].outage = !meets(direct_pr, gamma_primary_);
        for (std::size_t i = 0; i < num_srs; ++i)
            out.users[first_sr_ + i].outage = true;
        return;
    }

    if (!full_decoder)
    {
        // Relay forwards the primary signal alone at full power.
        const std::size_t n = *primary_decoder;
        out.slot2_mode = SlotMode::oma_primary_only;
        out.selected_relay = relay_id(static_cast<int>(n) + 1);
        const std::array<double, 2> branches{direct_pr, rho * draw.gains[rn_pr_[n]]};
        out.users[0].outage = !meets(mrc_combine(branches), gamma_primary_);
        for (std::size_t i = 0; i < num_srs; ++i)
            out.users[first_sr_ + i].outage = true;
        return;
    }

    // Slot 2: selected relay sends the full downlink superposition.
    const std::size_t n = *full_decoder;
    out.slot2_mode = SlotMode::noma;
    out.selected_relay = relay_id(static_cast<int>(n) + 1);
    const double relay_pr = rho * draw.gains[rn_pr_[n]];
    const std::array<double, 2> branches{
        direct_pr, cfg_.split[0] * relay_pr / (cfg_.split.tail(0) * relay_pr + 1.0)};
    out.users[0].outage = !meets(mrc_combine(branches), gamma_primary_);

    for (std::size_t i = 0; i < num_srs; ++i)
        relay_gains[i] = draw.gains[rn_sr_[n][i]];
    const auto order = secondary_order(relay_gains);
    const auto position = positions_of(order);
    for (std::size_t i = 0; i < num_srs; ++i)
    {
        const auto sinrs = sinr_downlink_noma(cfg_.split, relay_gains[i], rho, inr);
        chain.clear();
        chain.push_back({0, sinrs[0], gamma_primary_});
        append_secondary_stages(chain, sinrs, 1, order, position[i], gamma_sr_);
        out.users[first_sr_ + i].outage = !chain_succeeds(chain);
    }
}

void SchemeEvaluator::eval_crnoma_direct(const ChannelDraw& draw, double rho,
                                         TrialOutcome& out) const
{
    // split[0] carries the PR's unicast signal, split[1] the SRs' multicast signal.
    const auto pr = sinr_downlink_noma(cfg_.split, draw.gains[*bs_pr_], rho, 0.0);
    out.users[0].outage = !meets(pr[0], gamma_primary_);

    for (std::size_t i = 0; i < bs_sr_.size(); ++i)
    {
        const auto s = sinr_downlink_noma(cfg_.split, draw.gains[bs_sr_[i]], rho, 0.0);
        const std::array<SicStage, 2> chain{
            SicStage{0, s[0], gamma_primary_}, SicStage{1, s[1], gamma_sr_[i]}};
        out.users[first_sr_ + i].outage = !chain_succeeds(chain);
    }
}

void SchemeEvaluator::eval_crnoma_coop(const ChannelDraw& draw, double rho,
                                       TrialOutcome& out) const
{
    const std::size_t num_srs = bs_sr_.size();

    // Phase 1: BS broadcasts unicast + multicast; SRs that recover both may relay.
    const double pr_phase1 = sinr_downlink_noma(cfg_.split, draw.gains[*bs_pr_], rho, 0.0)[0];
    std::vector<std::vector<double>> phase1(num_srs);
    std::optional<std::size_t> relay;
    for (std::size_t i = 0; i < num_srs; ++i)
    {
        phase1[i] = sinr_downlink_noma(cfg_.split, draw.gains[bs_sr_[i]], rho, 0.0);
        const std::array<SicStage, 2> chain{SicStage{0, phase1[i][0], gamma_primary_},
                                            SicStage{1, phase1[i][1], gamma_sr_[i]}};
        if (chain_succeeds(chain) &&
            (!relay || draw.gains[sr_pr_[i]] > draw.gains[sr_pr_[*relay]]))
        {
            relay = i;
        }
    }

    if (!relay)
    {
        out.slot2_mode = SlotMode::silent;
        out.users[0].outage = !meets(pr_phase1, gamma_primary_);
        for (std::size_t i = 0; i < num_srs; ++i)
            out.users[first_sr_ + i].outage = true;
        return;
    }

    // Phase 2: the relay re-superimposes both signals at full power.
    const std::size_t r = *relay;
    out.slot2_mode = SlotMode::noma;
    out.selected_relay = sr_id(static_cast<int>(r) + 1);

    const std::array<double, 2> pr_branches{
        pr_phase1, sinr_downlink_noma(cfg_.split, draw.gains[sr_pr_[r]], rho, 0.0)[0]};
    out.users[0].outage = !meets(mrc_combine(pr_branches), gamma_primary_);

    for (std::size_t j = 0; j < num_srs; ++j)
    {
        if (j == r)
            continue;
        const auto phase2 = sinr_downlink_noma(cfg_.split, draw.gains[sr_sr_[r][j]], rho, 0.0);
        const std::array<double, 2> unicast{phase1[j][0], phase2[0]};
        const std::array<double, 2> multicast{phase1[j][1], phase2[1]};
        const std::array<SicStage, 2> chain{SicStage{0, mrc_combine(unicast), gamma_primary_},
                                            SicStage{1, mrc_combine(multicast), gamma_sr_[j]}};
        out.users[first_sr_ + j].outage = !chain_succeeds(chain);
    }
}

void SchemeEvaluator::eval_oma_tdma(const ChannelDraw& draw, double rho, TrialOutcome& out) const
{
    out.users[0].outage = !meets(rho * draw.gains[*bs_pr_], gamma_primary_);
    for (std::size_t i = 0; i < bs_sr_.size(); ++i)
        out.users[first_sr_ + i].outage = !meets(rho * draw.gains[bs_sr_[i]], gamma_sr_[i]);
}

namespace {

TrialOutcome evaluate_as(Scheme expected, const ChannelDraw& draw, const ScenarioConfig& cfg)
{
    if (cfg.scheme != expected)
    {
        throw UsageError("config scheme " + std::string(to_string(cfg.scheme)) +
                         " passed to evaluator for " + std::string(to_string(expected)));
    }
    return SchemeEvaluator(cfg).evaluate(draw);
}

}  // namespace

TrialOutcome eval_underlay_direct(const ChannelDraw& draw, const ScenarioConfig& cfg)
{
    return evaluate_as(Scheme::underlay_direct, draw, cfg);
}

TrialOutcome eval_underlay_af(const ChannelDraw& draw, const ScenarioConfig& cfg)
{
    return evaluate_as(Scheme::underlay_af, draw, cfg);
}

TrialOutcome eval_overlay_direct(const ChannelDraw& draw, const ScenarioConfig& cfg)
{
    return evaluate_as(Scheme::overlay_direct, draw, cfg);
}

TrialOutcome eval_overlay_coop(const ChannelDraw& draw, const ScenarioConfig& cfg)
{
    return evaluate_as(Scheme::overlay_coop, draw, cfg);
}

TrialOutcome eval_crnoma_direct(const ChannelDraw& draw, const ScenarioConfig& cfg)
{
    return evaluate_as(Scheme::crnoma_direct, draw, cfg);
}

TrialOutcome eval_crnoma_coop(const ChannelDraw& draw, const ScenarioConfig& cfg)
{
    return evaluate_as(Scheme::crnoma_coop, draw, cfg);
}

TrialOutcome eval_oma_tdma(const ChannelDraw& draw, const ScenarioConfig& cfg)
{
    return evaluate_as(Scheme::oma_tdma, draw, cfg);
}

TrialOutcome evaluate(const ChannelDraw& draw, const ScenarioConfig& cfg)
{
    return SchemeEvaluator(cfg).evaluate(draw);
}

}  // namespace cognoma
