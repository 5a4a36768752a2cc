#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "risioi/sweep.hpp"

using namespace risioi;

namespace {

std::string minimal_config(const std::string& extra_scenario = "",
                           const std::string& extra_top = "") {
    return R"({
      "schema": 1,
      "scenario": {
        "id": "direct-only",
        "direct": {"distance_m": 100.0, "pathloss_exponent": 3.1})" +
           extra_scenario + R"(
      },
      "p_db_range": {"start": 0.0, "stop": 30.0, "step": 10.0},
      "run": {"seed": 5, "trials": 1000, "chunks": 8},
      "outputs": ["analytic_se", "analytic_outage"])" +
           extra_top + R"(
    })";
}

} // namespace

TEST_CASE("parse_config: minimal direct-only scenario") {
    const auto cfg = sweep::parse_config_json(minimal_config());
    CHECK(cfg.scenario.id == "direct-only");
    CHECK(cfg.scenario.direct.has_value());
    CHECK_FALSE(cfg.scenario.reference_ris.has_value());
    CHECK(cfg.scenario.external_ris.empty());
    CHECK(cfg.run.seed == 5);
    CHECK(cfg.seed_from_config);
    CHECK(cfg.p_db_range.values() == std::vector<double>{0.0, 10.0, 20.0, 30.0});
}

TEST_CASE("parse_config: schema violations name the offending key") {
    using sweep::ConfigError;
    // unknown key
    CHECK_THROWS_WITH_AS(sweep::parse_config_json(minimal_config("", ",\"foo\": 1")),
                         doctest::Contains("foo"), ConfigError);
    // negative distance
    const std::string bad = R"({
      "schema": 1,
      "scenario": {"direct": {"distance_m": -5.0, "pathloss_exponent": 3.1}},
      "p_db_range": {"start": 0, "stop": 10, "step": 5},
      "outputs": ["analytic_se"]
    })";
    CHECK_THROWS_WITH_AS(sweep::parse_config_json(bad), doctest::Contains("distance_m"),
                         ConfigError);
    // direct link must not carry a K-factor key (it is fixed to Rayleigh)
    std::string with_k = minimal_config();
    with_k.replace(with_k.find("\"pathloss_exponent\": 3.1"), 24,
                   "\"pathloss_exponent\": 3.1, \"k_factor\": 2.0");
    CHECK_THROWS_WITH_AS(sweep::parse_config_json(with_k), doctest::Contains("k_factor"),
                         ConfigError);
    // bad schema version
    std::string v2 = minimal_config();
    v2.replace(v2.find("\"schema\": 1"), 11, "\"schema\": 2");
    CHECK_THROWS_WITH_AS(sweep::parse_config_json(v2), doctest::Contains("schema"),
                         ConfigError);
    // negative kappa inside a RIS link
    const std::string badk = R"({
      "schema": 1,
      "scenario": {"reference_ris": {"num_elements": 4, "quantizer_bits": 3,
        "inbound": {"distance_m": 30, "pathloss_exponent": 2.2, "k_factor": -1},
        "outbound": {"distance_m": 30, "pathloss_exponent": 2.4}}},
      "p_db_range": {"start": 0, "stop": 10, "step": 5},
      "outputs": ["analytic_se"]
    })";
    CHECK_THROWS_WITH_AS(sweep::parse_config_json(badk), doctest::Contains("k_factor"),
                         ConfigError);
    // missing file
    CHECK_THROWS_AS(sweep::parse_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("presets: paper constants") {
    const auto cfg = sweep::parse_config_json(sweep::preset_json("fig3-N400"));
    REQUIRE(cfg.scenario.reference_ris.has_value());
    CHECK(cfg.scenario.reference_ris->num_elements == 400);
    CHECK(cfg.scenario.reference_ris->quantizer.bits == 3);
    CHECK(cfg.scenario.reference_ris->inbound.k_factor == 10.0);
    CHECK(cfg.scenario.reference_ris->outbound.k_factor == 6.0);
    CHECK(cfg.scenario.reference_ris->inbound.geometry.distance_m == 30.0);
    CHECK(cfg.scenario.reference_ris->inbound.geometry.pathloss_exponent == 2.2);
    CHECK(cfg.scenario.reference_ris->outbound.geometry.pathloss_exponent == 2.4);
    REQUIRE(cfg.scenario.direct.has_value());
    CHECK(cfg.scenario.direct->geometry.distance_m == 100.0);
    CHECK(cfg.scenario.direct->geometry.pathloss_exponent == 3.1);
    REQUIRE(cfg.scenario.external_ris.size() == 1);
    CHECK(cfg.scenario.external_ris[0].num_elements == 10000);

    // preset + per-key override
    const std::string overridden = R"({"preset": "fig3-N400",
      "run": {"trials": 50}, "scenario": {"id": "custom"}})";
    const auto cfg2 = sweep::parse_config_json(overridden);
    CHECK(cfg2.run.trials == 50);
    CHECK(cfg2.scenario.id == "custom");
    CHECK(cfg2.scenario.reference_ris->num_elements == 400);

    CHECK_THROWS_AS(sweep::preset_json("fig9"), sweep::ConfigError);
}

TEST_CASE("figure_preset groups") {
    const auto case1 = sweep::figure_preset("fig2-case1");
    REQUIRE(case1.size() == 4);
    for (const auto& c : case1) {
        CHECK_FALSE(c.scenario.reference_ris.has_value());  // N = 0 analytic path
        CHECK(c.scenario.external_ris.size() == 1);
    }
    CHECK(case1[0].scenario.external_ris[0].num_elements == 16);
    CHECK(case1[3].scenario.external_ris[0].num_elements == 1024);
    const auto case2 = sweep::figure_preset("fig2-case2");
    REQUIRE(case2.size() == 4);
    for (const auto& c : case2)
        CHECK(c.scenario.reference_ris->num_elements ==
              c.scenario.external_ris[0].num_elements);
    const auto fig3 = sweep::figure_preset("fig3");
    REQUIRE(fig3.size() == 4);
    CHECK_THROWS_AS(sweep::figure_preset("fig4"), sweep::ConfigError);
    // every preset uses q = 3 on the reference RIS where one exists
    for (const auto& c : case2)
        CHECK(c.scenario.reference_ris->quantizer.bits == 3);
}

TEST_CASE("run_sweep: row layout and determinism") {
    auto cfg = sweep::parse_config_json(minimal_config());
    cfg.outputs = {sweep::Output::kAnalyticOutage, sweep::Output::kMcOutage,
                   sweep::Output::kAnalyticSe, sweep::Output::kMcSe};
    const auto rows = sweep::run_sweep(cfg, 2);
    CHECK(rows.size() == 8);  // 4 p-points x {outage, se}
    // sorted by (metric, p_db)
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const bool ordered = rows[i - 1].metric < rows[i].metric ||
                             (rows[i - 1].metric == rows[i].metric &&
                              rows[i - 1].p_db <= rows[i].p_db);
        CHECK(ordered);
    }
    for (const auto& r : rows) {
        CHECK(r.mc_value.has_value());
        CHECK(r.mc_stderr.has_value());
        CHECK(r.rel_error.has_value());
        if (r.mc_value)
            CHECK(*r.rel_error ==
                  doctest::Approx(std::fabs(r.analytic - *r.mc_value) /
                                  std::max(std::fabs(*r.mc_value), 1e-12)));
    }
    // identical config + seed => identical rows, regardless of threads
    const auto rows2 = sweep::run_sweep(cfg, 1);
    CHECK(rows == rows2);
    // trials = 0 drops the MC columns but keeps analytic ones
    cfg.run.trials = 0;
    const auto dry = sweep::run_sweep(cfg, 1);
    CHECK(dry.size() == 8);
    for (const auto& r : dry) CHECK_FALSE(r.mc_value.has_value());
}

TEST_CASE("csv round-trip is lossless") {
    auto cfg = sweep::parse_config_json(sweep::preset_json("fig2-case2-N16"));
    cfg.run.trials = 2000;
    cfg.run.chunks = 8;
    const auto rows = sweep::run_sweep(cfg, 2);
    const auto text = sweep::rows_to_csv(rows);
    const auto parsed = sweep::rows_from_csv(text);
    CHECK(parsed == rows);
    // byte-identical re-emission
    CHECK(sweep::rows_to_csv(parsed) == text);
    // header sanity
    CHECK(text.rfind("scenario_id,p_db,n,m_total,q_bits,metric,analytic,", 0) == 0);
}

TEST_CASE("validation_report: gating and diagnostics") {
    auto cfg = sweep::parse_config_json(sweep::preset_json("fig2-case2-N16"));
    cfg.run.trials = 5000;
    cfg.run.chunks = 16;
    const auto rows = sweep::run_sweep(cfg, 2);
    // empty tolerance map: reported, nothing gated
    const auto open = sweep::validation_report(rows, {}, cfg);
    CHECK(open.passed);
    CHECK(open.failed_metrics.empty());
    CHECK(open.report.find("eq16") != std::string::npos);
    CHECK(open.report.find("eq18") != std::string::npos);
    // an impossible tolerance fails and names the metric
    const auto strict = sweep::validation_report(rows, {{"se", 1e-12}}, cfg);
    CHECK_FALSE(strict.passed);
    REQUIRE(strict.failed_metrics.size() == 1);
    CHECK(strict.failed_metrics[0] == "se");
    CHECK(strict.report.find("FAIL") != std::string::npos);
    // a loose tolerance passes
    const auto loose = sweep::validation_report(rows, {{"se", 0.5}}, cfg);
    CHECK(loose.passed);
    // diagnostics are present even for an N = 0 scenario
    auto cfg0 = sweep::parse_config_json(sweep::preset_json("fig2-case1-M16"));
    cfg0.run.trials = 0;
    const auto rows0 = sweep::run_sweep(cfg0, 1);
    const auto rep0 = sweep::validation_report(rows0, {}, cfg0);
    CHECK(rep0.report.find("eq16") != std::string::npos);
    CHECK(rep0.report.find("eq18") != std::string::npos);
}

TEST_CASE("equal-array fairness: swapping which operator is reference is a no-op") {
    // Two operators with equal-sized arrays and symmetric geometry. Operator
    // A's view: its RIS is the controlled one, B's is external interference;
    // operator B's view is the mirror image. With N = M and identical link
    // parameters the two views produce exactly equal analytic SE.
    auto view = [](int n_ref, int m_ext) {
        std::string txt = R"({
          "schema": 1,
          "scenario": {
            "id": "fair",
            "direct": {"distance_m": 100.0, "pathloss_exponent": 3.1},
            "reference_ris": {"num_elements": )" + std::to_string(n_ref) +
                          R"(, "quantizer_bits": 3,
              "inbound": {"distance_m": 30.0, "pathloss_exponent": 2.2, "k_factor": 10.0},
              "outbound": {"distance_m": 30.0, "pathloss_exponent": 2.4, "k_factor": 6.0}},
            "external_ris": [{"num_elements": )" + std::to_string(m_ext) +
                          R"(,
              "inbound": {"distance_m": 30.0, "pathloss_exponent": 2.2, "k_factor": 10.0},
              "outbound": {"distance_m": 30.0, "pathloss_exponent": 2.4, "k_factor": 6.0}}]
          },
          "p_db_range": {"start": 0.0, "stop": 20.0, "step": 10.0},
          "run": {"trials": 0},
          "outputs": ["analytic_se"]
        })";
        return sweep::run_sweep(sweep::parse_config_json(txt), 1);
    };
    const auto op_a = view(32, 32);  // A reference, B external
    const auto op_b = view(32, 32);  // B reference, A external (mirror image)
    REQUIRE(op_a.size() == 3);
    for (std::size_t i = 0; i < op_a.size(); ++i)
        CHECK(op_a[i].analytic == op_b[i].analytic);  // exact, not approximate
    // sanity: unequal arrays break the symmetry
    const auto uneven = view(32, 64);
    CHECK(uneven[0].analytic != op_a[0].analytic);
}
