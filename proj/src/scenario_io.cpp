#include "cognoma/scenario_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>

#include "cognoma/errors.hpp"

namespace cognoma {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> to_double(std::string_view s)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty() || !std::isfinite(value))
        return std::nullopt;
    return value;
}

std::string format_number(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

struct Entry
{
    std::string value;
    int line = 0;
};

class Reader
{
  public:
    Reader(std::string_view text, std::string_view source) : source_(source)
    {
        int line_no = 0;
        std::size_t start = 0;
        while (start <= text.size())
        {
            const auto end = text.find('\n', start);
            std::string_view line =
                text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
            ++line_no;
            add_line(line, line_no);
            if (end == std::string_view::npos)
                break;
            start = end + 1;
        }
    }

    [[noreturn]] void fail(int line, std::string_view key, const std::string& message) const
    {
        std::string text(source_);
        if (line > 0)
            text += ":" + std::to_string(line);
        text += ": ";
        if (!key.empty())
            text += "key '" + std::string(key) + "': ";
        throw ConfigError(text + message);
    }

    const Entry* find(const std::string& key) const
    {
        auto it = entries_.find(key);
        if (it == entries_.end())
            return nullptr;
        used_.insert(key);
        return &it->second;
    }

    const Entry& require(const std::string& key) const
    {
        if (const Entry* e = find(key))
            return *e;
        fail(0, key, "required key is missing");
    }

    double number(const std::string& key, const Entry& e) const
    {
        auto v = to_double(e.value);
        if (!v)
            fail(e.line, key, "expected a number, got '" + e.value + "'");
        return *v;
    }

    int count(const std::string& key, int fallback) const
    {
        const Entry* e = find(key);
        if (!e)
            return fallback;
        const double v = number(key, *e);
        if (v < 0 || v != std::floor(v) || v > 1e6)
            fail(e->line, key, "expected a non-negative integer, got '" + e->value + "'");
        return static_cast<int>(v);
    }

    // link.<id>.mean_gain keys in file order.
    const std::vector<std::string>& link_keys() const { return link_keys_; }

    void reject_unused() const
    {
        for (const auto& [key, entry] : entries_)
        {
            if (!used_.contains(key))
                fail(entry.line, key, "unknown key");
        }
    }

    int line_of(std::string_view key) const
    {
        auto it = entries_.find(std::string(key));
        return it == entries_.end() ? 0 : it->second.line;
    }

  private:
    void add_line(std::string_view line, int line_no)
    {
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            return;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(line_no, {}, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty())
            fail(line_no, {}, "empty key");
        if (value.empty())
            fail(line_no, key, "empty value");
        if (entries_.contains(key))
            fail(line_no, key, "duplicate key (first set on line " +
                                   std::to_string(entries_.at(key).line) + ")");
        entries_.emplace(key, Entry{value, line_no});
        if (key.starts_with("link."))
            link_keys_.push_back(key);
    }

    std::string source_;
    std::map<std::string, Entry> entries_;
    std::vector<std::string> link_keys_;
    mutable std::set<std::string> used_;
};

}  // namespace

std::vector<ScenarioConfig> parse_scenario_text(std::string_view text, std::string_view source)
{
    const Reader reader(text, source);
    ScenarioConfig base;

    // Links, in file order: the order fixes the per-trial draw sequence.
    std::vector<LinkStat> links;
    for (const auto& key : reader.link_keys())
    {
        static constexpr std::string_view suffix = ".mean_gain";
        const Entry& e = *reader.find(key);
        if (!key.ends_with(suffix) || key.size() <= 5 + suffix.size())
            reader.fail(e.line, key, "link keys have the form link.<from>-><to>.mean_gain");
        const std::string id = key.substr(5, key.size() - 5 - suffix.size());
        const double gain = reader.number(key, e);
        if (gain < 0.0)
            reader.fail(e.line, key, "mean gain must be >= 0");
        links.push_back({id, gain});
    }
    if (links.empty())
        reader.fail(0, "link", "scenario defines no links");
    try
    {
        base.topology = Topology(std::move(links));
    }
    catch (const ConfigError& err)
    {
        reader.fail(0, "link", err.what());
    }

    if (const Entry* split = reader.find("split"))
    {
        const Entry& e = *split;
        std::vector<double> fractions;
        for (auto item : split_list(e.value, ','))
        {
            auto v = to_double(item);
            if (!v)
                reader.fail(e.line, "split", "expected comma-separated numbers");
            fractions.push_back(*v);
        }
        try
        {
            base.split = PowerSplit(std::move(fractions));
        }
        catch (const ConfigError& err)
        {
            reader.fail(e.line, "split", err.what());
        }
    }

    for (const std::string user : {"PR", "SR"})
    {
        if (const Entry* e = reader.find("rate." + user))
            base.rates[user] = reader.number("rate." + user, *e);
    }
    base.num_srs = reader.count("num_srs", 0);
    base.num_relays = reader.count("num_relays", 0);
    for (int i = 1; i <= base.num_srs; ++i)
    {
        const std::string key = "rate." + sr_id(i);
        if (const Entry* e = reader.find(key))
            base.rates[sr_id(i)] = reader.number(key, *e);
    }
    for (const auto& [user, rate] : base.rates)
    {
        if (rate < 0.0)
            reader.fail(reader.line_of("rate." + user), "rate." + user, "rate must be >= 0");
    }

    const Entry* inr_db = reader.find("inr_db");
    const Entry* inr = reader.find("inr");
    if (inr_db && inr)
        reader.fail(inr->line, "inr", "set either inr or inr_db, not both");
    if (inr_db && inr_db->value != "none")
        base.interference = InterferenceModel::fixed(db_to_linear(reader.number("inr_db", *inr_db)));
    if (inr)
    {
        const double v = reader.number("inr", *inr);
        if (v < 0.0)
            reader.fail(inr->line, "inr", "INR must be >= 0");
        base.interference = InterferenceModel::fixed(v);
    }

    const Entry* snr_db = reader.find("snr_db");
    const Entry* snr = reader.find("snr");
    if (snr_db && snr)
        reader.fail(snr->line, "snr", "set either snr or snr_db, not both");
    if (snr_db)
        base.rho = db_to_linear(reader.number("snr_db", *snr_db));
    if (snr)
    {
        base.rho = reader.number("snr", *snr);
        if (base.rho < 0.0)
            reader.fail(snr->line, "snr", "SNR must be >= 0");
    }

    if (const Entry* e = reader.find("roles"))
    {
        auto roles = role_assignment_from_string(e->value);
        if (!roles)
            reader.fail(e->line, "roles", "expected 'ranked' or 'fixed', got '" + e->value + "'");
        base.roles = *roles;
    }

    const Entry* cap_db = reader.find("primary_cap_db");
    const Entry* cap = reader.find("primary_cap");
    if (cap_db && cap)
        reader.fail(cap->line, "primary_cap", "set either primary_cap or primary_cap_db, not both");
    if (cap_db)
        base.primary_cap = db_to_linear(reader.number("primary_cap_db", *cap_db));
    if (cap)
        base.primary_cap = reader.number("primary_cap", *cap);

    std::vector<ScenarioConfig> configs;
    const Entry& scheme_entry = reader.require("scheme");
    for (auto name : split_list(scheme_entry.value, ','))
    {
        auto scheme = scheme_from_string(name);
        if (!scheme)
            reader.fail(scheme_entry.line, "scheme", "unknown scheme '" + std::string(name) + "'");
        for (const auto& c : configs)
        {
            if (c.scheme == *scheme)
                reader.fail(scheme_entry.line, "scheme", "scheme listed twice: " + std::string(name));
        }
        ScenarioConfig cfg = base;
        cfg.scheme = *scheme;
        configs.push_back(std::move(cfg));
    }

    reader.reject_unused();

    static const std::regex key_pattern(R"(\(key ([^) ]+)\))");
    for (const auto& cfg : configs)
    {
        try
        {
            validate(cfg);
        }
        catch (const ConfigError& err)
        {
            const std::string message = std::string(to_string(cfg.scheme)) + ": " + err.what();
            std::cmatch m;
            const char* what = err.what();
            if (std::regex_search(what, m, key_pattern))
                reader.fail(reader.line_of(m[1].str()), m[1].str(), message);
            reader.fail(scheme_entry.line, "scheme", message);
        }
    }
    return configs;
}

std::vector<ScenarioConfig> parse_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(path.string() + ": cannot open scenario file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str(), path.string());
}

std::string write_scenario(std::span<const ScenarioConfig> configs)
{
    if (configs.empty())
        throw UsageError("nothing to write");
    const ScenarioConfig& first = configs.front();
    for (const auto& cfg : configs)
    {
        ScenarioConfig same_scheme = cfg;
        same_scheme.scheme = first.scheme;
        if (!(same_scheme == first))
            throw UsageError("configs written together may differ only in scheme");
    }

    std::ostringstream os;
    os << "scheme = ";
    for (std::size_t i = 0; i < configs.size(); ++i)
        os << (i ? ", " : "") << to_string(configs[i].scheme);
    os << "\nnum_srs = " << first.num_srs << "\nnum_relays = " << first.num_relays << "\n";
    if (first.split.size() > 0)
    {
        os << "split = ";
        for (std::size_t i = 0; i < first.split.size(); ++i)
            os << (i ? ", " : "") << format_number(first.split[i], 17);
        os << "\n";
    }
    for (const auto& [user, rate] : first.rates)
        os << "rate." << user << " = " << format_number(rate, 17) << "\n";
    if (first.interference.kind == InterferenceModel::Kind::fixed_inr)
        os << "inr = " << format_number(first.interference.inr, 17) << "\n";
    os << "snr = " << format_number(first.rho, 17) << "\n";
    os << "roles = " << to_string(first.roles) << "\n";
    if (first.primary_cap)
        os << "primary_cap = " << format_number(*first.primary_cap, 17) << "\n";
    for (const auto& link : first.topology.links())
        os << "link." << link.link_id << ".mean_gain = " << format_number(link.mean_gain, 17) << "\n";
    return os.str();
}

namespace {

ScenarioConfig underlay_preset()
{
    std::vector<LinkStat> links{{"ST->SR1", 1.0}, {"ST->SR2", 1.0}, {"ST->R", 3.0},
                                {"R->SR1", 3.0},  {"R->SR2", 3.0}};
    ScenarioConfig cfg;
    cfg.topology = Topology(std::move(links));
    cfg.split = PowerSplit({0.8, 0.2});
    cfg.rates = {{"SR", 0.5}};
    cfg.interference = InterferenceModel::fixed(db_to_linear(10.0));
    cfg.num_srs = 2;
    cfg.num_relays = 1;
    return cfg;
}

ScenarioConfig overlay_preset()
{
    constexpr int srs = 2;
    constexpr int relays = 3;
    std::vector<LinkStat> links;
    auto add = [&](std::string_view a, std::string_view b) { links.push_back({link_id(a, b), 2.0}); };
    add("PT", "PR");
    add("PT", "ST");
    add("ST", "PR");
    for (int i = 1; i <= srs; ++i)
    {
        add("PT", sr_id(i));
        add("ST", sr_id(i));
    }
    for (int n = 1; n <= relays; ++n)
    {
        add("PT", relay_id(n));
        add("ST", relay_id(n));
        add(relay_id(n), "PR");
        for (int i = 1; i <= srs; ++i)
            add(relay_id(n), sr_id(i));
    }
    ScenarioConfig cfg;
    cfg.topology = Topology(std::move(links));
    cfg.split = PowerSplit({0.8, 0.15, 0.05});
    cfg.rates = {{"PR", 0.8}, {"SR", 0.5}};
    cfg.num_srs = srs;
    cfg.num_relays = relays;
    return cfg;
}

ScenarioConfig crnoma_preset()
{
    constexpr int srs = 2;
    std::vector<LinkStat> links{{"BS->PR", 0.5}};
    for (int i = 1; i <= srs; ++i)
        links.push_back({link_id("BS", sr_id(i)), 1.0});
    for (int i = 1; i <= srs; ++i)
        links.push_back({link_id(sr_id(i), "PR"), 1.0});
    for (int i = 1; i <= srs; ++i)
    {
        for (int j = 1; j <= srs; ++j)
        {
            if (i != j)
                links.push_back({link_id(sr_id(i), sr_id(j)), 2.0});
        }
    }
    ScenarioConfig cfg;
    cfg.topology = Topology(std::move(links));
    cfg.split = PowerSplit({0.8, 0.2});
    cfg.rates = {{"PR", 1.0}, {"SR", 1.5}};
    cfg.num_srs = srs;
    return cfg;
}

std::vector<ScenarioConfig> with_schemes(const ScenarioConfig& base, std::initializer_list<Scheme> schemes)
{
    std::vector<ScenarioConfig> out;
    for (Scheme s : schemes)
    {
        ScenarioConfig cfg = base;
        cfg.scheme = s;
        validate(cfg);
        out.push_back(std::move(cfg));
    }
    return out;
}

}  // namespace

std::vector<std::string_view> preset_names() { return {"underlay", "overlay", "crnoma"}; }

std::vector<ScenarioConfig> preset(std::string_view name)
{
    if (name == "underlay")
        return with_schemes(underlay_preset(), {Scheme::underlay_direct, Scheme::underlay_af});
    if (name == "overlay")
        return with_schemes(overlay_preset(), {Scheme::overlay_direct, Scheme::overlay_coop});
    if (name == "crnoma")
        return with_schemes(crnoma_preset(),
                            {Scheme::crnoma_direct, Scheme::crnoma_coop, Scheme::oma_tdma});
    throw ConfigError("unknown preset '" + std::string(name) +
                      "' (expected underlay, overlay or crnoma)");
}

std::vector<double> parse_snr_grid(std::string_view spec)
{
    const auto parts = split_list(spec, ':');
    if (parts.size() != 3)
        throw UsageError("SNR grid must be start:stop:step, got '" + std::string(spec) + "'");
    const auto start = to_double(parts[0]);
    const auto stop = to_double(parts[1]);
    const auto step = to_double(parts[2]);
    if (!start || !stop || !step)
        throw UsageError("SNR grid must be three numbers, got '" + std::string(spec) + "'");
    if (!(*step > 0.0))
        throw UsageError("SNR grid step must be > 0");
    if (*stop < *start)
        throw UsageError("SNR grid stop must be >= start");
    const double span = (*stop - *start) / *step;
    if (span > 1e6)
        throw UsageError("SNR grid has too many points");
    const auto points = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> grid(points);
    for (std::size_t k = 0; k < points; ++k)
        grid[k] = *start + static_cast<double>(k) * *step;
    return grid;
}

void write_csv(std::ostream& os, const SweepTable& table, std::uint64_t seed)
{
    os << "snr_db,scheme,user,outage,ci_lo,ci_hi,trials,seed\n";
    for (const auto& row : table.rows)
    {
        const auto& e = row.estimate;
        os << format_number(row.snr_db, 6) << ',' << to_string(row.scheme) << ',' << e.user << ','
           << format_number(e.p_hat, 6) << ',' << format_number(e.ci_low, 6) << ','
           << format_number(e.ci_high, 6) << ',' << e.trials << ',' << seed << '\n';
    }
}

}  // namespace cognoma
