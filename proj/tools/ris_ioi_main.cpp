// ris-ioi: analytic + Monte Carlo sweeps for inter-operator RIS interference.
//
//   ris-ioi sweep    --config cfg.json --out rows.csv
//   ris-ioi figure   <fig2-case1|fig2-case2|fig3> --out-dir DIR [--trials T] [--seed S]
//   ris-ioi validate --config cfg.json [--tol-outage X] [--tol-se Y]
//
// --threads changes wall time only, never results. Exit codes: 0 ok,
// 1 tolerance failure, 2 config error, 3 numeric error.

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "risioi/quadrature.hpp"
#include "risioi/sweep.hpp"

namespace {

using namespace risioi;

std::optional<std::uint64_t> env_seed() {
    const char* s = std::getenv("RIS_IOI_SEED");
    if (!s || !*s) return std::nullopt;
    std::uint64_t v = 0;
    const std::string str(s);
    const auto res = std::from_chars(str.data(), str.data() + str.size(), v);
    if (res.ec != std::errc() || res.ptr != str.data() + str.size())
        throw sweep::ConfigError("RIS_IOI_SEED is not an unsigned integer: '" + str + "'");
    return v;
}

// Precedence: --seed flag, then config value, then RIS_IOI_SEED, then default.
void apply_seed(sweep::SweepConfig& cfg, const std::optional<std::uint64_t>& flag_seed) {
    if (flag_seed) {
        cfg.run.seed = *flag_seed;
        return;
    }
    if (cfg.seed_from_config) return;
    if (const auto e = env_seed()) cfg.run.seed = *e;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_path,
                  const std::optional<std::uint64_t>& seed, int threads) {
    auto cfg = sweep::parse_config(config_path);
    apply_seed(cfg, seed);
    const auto rows = sweep::run_sweep(cfg, threads);
    sweep::write_csv(out_path, rows);
    std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
    return 0;
}

int run_figure_cmd(const std::string& figure, const std::string& out_dir,
                   std::optional<std::uint64_t> trials,
                   const std::optional<std::uint64_t>& seed, int threads) {
    auto configs = sweep::figure_preset(figure);
    std::filesystem::create_directories(out_dir);
    std::vector<sweep::SweepRow> all;
    for (auto& cfg : configs) {
        if (trials) {
            cfg.run.trials = *trials;
            if (cfg.run.trials > 0 && cfg.run.trials < cfg.run.chunks)
                cfg.run.chunks = static_cast<std::uint32_t>(cfg.run.trials);
        }
        apply_seed(cfg, seed);
        auto rows = sweep::run_sweep(cfg, threads);
        all.insert(all.end(), rows.begin(), rows.end());
    }
    const auto path = std::filesystem::path(out_dir) / (figure + ".csv");
    sweep::write_csv(path.string(), all);
    std::cout << "wrote " << all.size() << " rows to " << path.string() << "\n";
    return 0;
}

int run_validate_cmd(const std::string& config_path, std::optional<double> tol_outage,
                     std::optional<double> tol_se, const std::optional<std::uint64_t>& seed,
                     int threads) {
    auto cfg = sweep::parse_config(config_path);
    apply_seed(cfg, seed);
    const auto rows = sweep::run_sweep(cfg, threads);
    std::map<std::string, double> tolerances;
    if (tol_outage) tolerances["outage"] = *tol_outage;
    if (tol_se) tolerances["se"] = *tol_se;
    const auto result = sweep::validation_report(rows, tolerances, cfg);
    std::cout << result.report;
    if (!result.passed) {
        std::cerr << "tolerance failure:";
        for (const auto& m : result.failed_metrics) std::cerr << " " << m;
        std::cerr << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"inter-operator RIS interference: analytic formulas vs Monte Carlo"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads,
                   "worker threads (0 = hardware); affects wall time only");
    std::optional<std::uint64_t> seed;
    app.add_option("--seed", seed, "RNG seed (wins over config and RIS_IOI_SEED)");

    auto* sweep_cmd = app.add_subcommand("sweep", "run one sweep config to CSV");
    std::string config_path, out_path;
    sweep_cmd->add_option("--config", config_path, "JSON sweep config")->required();
    sweep_cmd->add_option("--out", out_path, "output CSV path")->required();

    auto* figure_cmd = app.add_subcommand("figure", "reproduce a reference figure as CSV");
    std::string figure_name, out_dir{"."};
    figure_cmd->add_option("figure", figure_name, "fig2-case1 | fig2-case2 | fig3")
        ->required();
    figure_cmd->add_option("--out-dir", out_dir, "output directory");
    std::optional<std::uint64_t> trials;
    figure_cmd->add_option("--trials", trials, "Monte Carlo trials per sweep point");

    auto* validate_cmd =
        app.add_subcommand("validate", "cross-validate analytic vs Monte Carlo");
    std::string v_config;
    validate_cmd->add_option("--config", v_config, "JSON sweep config")->required();
    std::optional<double> tol_outage, tol_se;
    validate_cmd->add_option("--tol-outage", tol_outage, "max relative error for outage");
    validate_cmd->add_option("--tol-se", tol_se, "max relative error for se");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep_cmd) return run_sweep_cmd(config_path, out_path, seed, threads);
        if (*figure_cmd) return run_figure_cmd(figure_name, out_dir, trials, seed, threads);
        if (*validate_cmd) return run_validate_cmd(v_config, tol_outage, tol_se, seed, threads);
    } catch (const risioi::sweep::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const risioi::quadrature::QuadratureError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
