// Seeded Monte Carlo estimators over channel draws. Results depend only on
// (seed, chunks): each chunk owns a Philox substream keyed (seed, chunk) and
// partial results are reduced in chunk order with compensated summation, so
// the worker-thread count changes wall time, never values.

#ifndef RISIOI_MONTECARLO_HPP
#define RISIOI_MONTECARLO_HPP

#include <cstdint>
#include <vector>

#include "risioi/analytic.hpp"
#include "risioi/channel.hpp"

namespace risioi::mc {

struct MetricEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t num_samples = 0;
};

struct RunSpec {
    std::uint64_t seed = 12345;
    std::uint64_t trials = 100000;
    std::uint32_t chunks = 64;

    void validate() const;
};

// P(gamma < gamma_th) with binomial standard error.
MetricEstimate estimate_outage(const channel::Scenario& scenario, double p_linear,
                               double gamma_th, const RunSpec& run, int threads = 0);

// Sample mean of log2(1 + gamma) with standard error.
MetricEstimate estimate_spectral_efficiency(const channel::Scenario& scenario,
                                            double p_linear, const RunSpec& run,
                                            int threads = 0);

// One draw set evaluated at several transmit SNRs (the draw does not depend
// on p). estimate_spectral_efficiency(p) == multi({p})[0] bit for bit.
std::vector<MetricEstimate> estimate_spectral_efficiency_multi(
    const channel::Scenario& scenario, const std::vector<double>& p_linear,
    const RunSpec& run, int threads = 0);

// Empirical CDF of gamma on the given sorted grid, one draw set for all
// points.
analytic::CdfCurve empirical_cdf(const channel::Scenario& scenario, double p_linear,
                                 const std::vector<double>& grid, const RunSpec& run,
                                 int threads = 0);

// All |Xi|^2 draws, in chunk order (gamma = p * value). Deterministic like
// the estimators; used for exact-sup distribution tests.
std::vector<double> snr_factor_samples(const channel::Scenario& scenario,
                                       const RunSpec& run, int threads = 0);

// max_i |a_i - b_i| over identical grids; throws on grid mismatch.
double ks_distance(const analytic::CdfCurve& a, const analytic::CdfCurve& b);

} // namespace risioi::mc

#endif
