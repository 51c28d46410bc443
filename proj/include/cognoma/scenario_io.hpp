#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cognoma/montecarlo.hpp"
#include "cognoma/schemes.hpp"

namespace cognoma {

/// Reads a key-value scenario file (see docs/scenario-format.md). One file
/// yields one config per listed scheme; all other fields are shared. Throws
/// ConfigError with "path:line:" diagnostics naming the offending key.
std::vector<ScenarioConfig> parse_scenario(const std::filesystem::path& path);
std::vector<ScenarioConfig> parse_scenario_text(std::string_view text,
                                                std::string_view source = "<input>");

/// Inverse of parse_scenario_text for configs that differ only in scheme.
std::string write_scenario(std::span<const ScenarioConfig> configs);

/// Built-in experiments: "underlay", "overlay", "crnoma".
std::vector<ScenarioConfig> preset(std::string_view name);
std::vector<std::string_view> preset_names();

/// "start:stop:step" in dB, stop inclusive. Throws UsageError on bad grammar.
std::vector<double> parse_snr_grid(std::string_view spec);

/// Plot-ready CSV: snr_db,scheme,user,outage,ci_lo,ci_hi,trials,seed
void write_csv(std::ostream& os, const SweepTable& table, std::uint64_t seed);

}  // namespace cognoma
