// Outage-vs-SNR sweeps for the cognitive NOMA schemes, written as CSV.
//
//   cognoma_sim --preset crnoma --snr 0:40:5 --trials 100000 --seed 7 --out crnoma.csv
//   cognoma_sim --config my_scenario.cfg --workers 8
//
// Exit codes: 0 success, 2 configuration or usage error, 1 runtime failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cognoma/errors.hpp"
#include "cognoma/montecarlo.hpp"
#include "cognoma/scenario_io.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 1;

unsigned default_workers()
{
    if (const char* env = std::getenv("COGNOMA_WORKERS"); env && *env)
    {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (*end != '\0' || v == 0 || v > 4096)
            throw cognoma::UsageError("COGNOMA_WORKERS must be a positive integer");
        return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Monte Carlo outage simulator for cognitive NOMA schemes"};

    std::string preset_name;
    std::string config_path;
    std::string snr_spec = "0:40:5";
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string out_path;
    double confidence = 0.95;
    bool emit_config = false;

    auto* preset_opt = app.add_option("--preset", preset_name, "Built-in experiment")
                           ->check(CLI::IsMember({"underlay", "overlay", "crnoma"}));
    auto* config_opt = app.add_option("--config", config_path, "Scenario file");
    preset_opt->excludes(config_opt);
    app.add_option("--snr", snr_spec, "SNR grid in dB as start:stop:step")->capture_default_str();
    app.add_option("--trials", trials, "Trials per grid point")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--seed", seed, "Random seed")->capture_default_str();
    app.add_option("--workers", workers,
                   "Worker threads (default: $COGNOMA_WORKERS, else hardware concurrency)")
        ->check(CLI::Range(1u, 4096u));
    app.add_option("--out", out_path, "Write CSV here instead of stdout");
    app.add_option("--confidence", confidence, "Wilson interval confidence level")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app.add_flag("--emit-config", emit_config, "Print the scenario file for the selection and exit");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try
    {
        if (preset_name.empty() && config_path.empty())
            throw cognoma::UsageError("one of --preset or --config is required");
        const auto configs =
            preset_name.empty() ? cognoma::parse_scenario(config_path) : cognoma::preset(preset_name);

        if (emit_config)
        {
            std::cout << cognoma::write_scenario(configs);
            return 0;
        }

        const auto grid = cognoma::parse_snr_grid(snr_spec);
        cognoma::RunOptions options;
        options.workers = workers ? workers : default_workers();
        options.confidence = confidence;

        const auto table = cognoma::sweep_snr(configs, grid, trials, seed, options);

        // Build in memory first so a failed run never leaves a partial file.
        std::ostringstream csv;
        cognoma::write_csv(csv, table, seed);
        if (out_path.empty())
        {
            std::cout << csv.str() << std::flush;
        }
        else
        {
            std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
            out << csv.str();
            if (!out.flush())
                throw std::runtime_error("cannot write " + out_path);
        }
    }
    catch (const cognoma::ConfigError& e)
    {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const cognoma::UsageError& e)
    {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
