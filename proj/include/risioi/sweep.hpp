// Experiment harness: JSON sweep configs (strict, versioned schema),
// scenario presets reproducing the reference figures, analytic/Monte-Carlo
// sweeps with lossless CSV output, and cross-validation reports.

#ifndef RISIOI_SWEEP_HPP
#define RISIOI_SWEEP_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "risioi/analytic.hpp"
#include "risioi/channel.hpp"
#include "risioi/montecarlo.hpp"

namespace risioi::sweep {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Output {
    kAnalyticOutage,
    kMcOutage,
    kAnalyticSe,
    kMcSe,
    kSeAsymptotic,
    kOutageAsymptotic,
};

struct PdbRange {
    double start = 0.0;
    double stop = 30.0;
    double step = 5.0;

    std::vector<double> values() const;  // inclusive of stop within half a step
};

struct SweepConfig {
    channel::Scenario scenario;
    PdbRange p_db_range;
    double gamma_th_db = 0.0;
    mc::RunSpec run;
    bool seed_from_config = false;  // true when the JSON set run.seed explicitly
    std::vector<Output> outputs;
    analytic::YSplit y_split = analytic::YSplit::kPaper;
};

// One CSV row; MC fields are empty when no trials back the metric.
struct SweepRow {
    std::string scenario_id;
    double p_db = 0.0;
    long long n = 0;
    long long m_total = 0;
    int q_bits = channel::Quantizer::kPerfect;  // kPerfect serialized as "perfect"
    std::string metric;                         // outage | se | se_asymptotic | outage_asymptotic
    double analytic = 0.0;
    std::optional<double> mc_value;
    std::optional<double> mc_stderr;
    std::optional<double> rel_error;

    bool operator==(const SweepRow&) const = default;
};

double db_to_linear(double db);

// Strict parse: unknown keys, missing schema version or invariant violations
// throw ConfigError naming the offending key. A top-level "preset" key seeds
// the config with a named preset; remaining keys override it per key.
SweepConfig parse_config(const std::string& path);
SweepConfig parse_config_json(const std::string& json_text);

// Single-scenario presets ("fig3-N400", "fig2-case1-M64", ...) as JSON text.
std::vector<std::string> preset_names();
std::string preset_json(const std::string& name);

// Figure presets: fig2-case1, fig2-case2, fig3.
std::vector<SweepConfig> figure_preset(const std::string& figure);

// Runs every metric of the config; rows are sorted by (metric, p_db).
// `threads` changes wall time only.
std::vector<SweepRow> run_sweep(const SweepConfig& config, int threads = 0);

// Lossless CSV (17 significant digits, '.' decimal point, header row).
std::string rows_to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> rows_from_csv(const std::string& csv);
void write_csv(const std::string& path, const std::vector<SweepRow>& rows);

struct ValidationResult {
    bool passed = true;
    std::string report;
    std::vector<std::string> failed_metrics;
};

// Per-metric max relative error and sup |analytic - mc| over the sweep, the
// printed-formula deviation diagnostics (always emitted), and a pass/fail
// verdict against the given per-metric relative-error tolerances.
ValidationResult validation_report(const std::vector<SweepRow>& rows,
                                   const std::map<std::string, double>& tolerances,
                                   const SweepConfig& config);

} // namespace risioi::sweep

#endif
