#include "risioi/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace risioi::mc {

namespace {

// Neumaier-compensated accumulator; deterministic for a fixed add order.
struct Kahan {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        comp += (std::fabs(sum) >= std::fabs(v)) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    double get() const { return sum + comp; }
};

int resolve_threads(int threads, std::uint32_t chunks) {
    if (threads <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = hw ? static_cast<int>(hw) : 1;
    }
    return std::min<int>(threads, static_cast<int>(chunks));
}

std::uint64_t chunk_trials(const RunSpec& run, std::uint32_t chunk) {
    const std::uint64_t base = run.trials / run.chunks;
    const std::uint64_t rem = run.trials % run.chunks;
    return base + (chunk < rem ? 1 : 0);
}

// Runs fn(chunk_index, chunk_trials, rng) once per chunk on a small worker
// pool. fn writes only into its own chunk's slot.
template <typename Fn>
void for_each_chunk(const channel::Scenario& scenario, const RunSpec& run, int threads,
                    Fn&& fn) {
    scenario.validate();
    run.validate();
    const int workers = resolve_threads(threads, run.chunks);
    std::atomic<std::uint32_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::uint32_t c = next.fetch_add(1);
            if (c >= run.chunks) return;
            rng::Philox4x64 gen(run.seed, c);
            fn(c, chunk_trials(run, c), gen);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
}

} // namespace

void RunSpec::validate() const {
    if (trials < 1) throw std::invalid_argument("RunSpec: trials >= 1 required");
    if (chunks < 1) throw std::invalid_argument("RunSpec: chunks >= 1 required");
    if (trials < chunks) throw std::invalid_argument("RunSpec: trials >= chunks required");
}

MetricEstimate estimate_outage(const channel::Scenario& scenario, double p_linear,
                               double gamma_th, const RunSpec& run, int threads) {
    if (!(p_linear > 0.0)) throw std::domain_error("estimate_outage: p > 0 required");
    if (!(gamma_th >= 0.0)) throw std::domain_error("estimate_outage: gamma_th >= 0 required");
    std::vector<std::uint64_t> hits(run.chunks, 0);
    const double threshold = gamma_th / p_linear;  // compare |Xi|^2 against gamma_th/p
    for_each_chunk(scenario, run, threads,
                   [&](std::uint32_t c, std::uint64_t n, rng::Philox4x64& gen) {
                       std::uint64_t h = 0;
                       for (std::uint64_t i = 0; i < n; ++i) {
                           const auto draw = channel::draw_block(scenario, gen);
                           if (std::norm(draw.xi) < threshold) ++h;
                       }
                       hits[c] = h;
                   });
    std::uint64_t total = 0;
    for (auto h : hits) total += h;
    MetricEstimate est;
    est.num_samples = run.trials;
    est.value = static_cast<double>(total) / static_cast<double>(run.trials);
    est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(run.trials));
    return est;
}

std::vector<MetricEstimate> estimate_spectral_efficiency_multi(
    const channel::Scenario& scenario, const std::vector<double>& p_linear,
    const RunSpec& run, int threads) {
    for (double p : p_linear)
        if (!(p > 0.0))
            throw std::domain_error("estimate_spectral_efficiency: p > 0 required");
    const std::size_t np = p_linear.size();
    // per chunk, per p: compensated sums of v and v^2
    std::vector<std::vector<Kahan>> sums(run.chunks, std::vector<Kahan>(np));
    std::vector<std::vector<Kahan>> sqs(run.chunks, std::vector<Kahan>(np));
    for_each_chunk(scenario, run, threads,
                   [&](std::uint32_t c, std::uint64_t n, rng::Philox4x64& gen) {
                       auto& s = sums[c];
                       auto& s2 = sqs[c];
                       for (std::uint64_t i = 0; i < n; ++i) {
                           const auto draw = channel::draw_block(scenario, gen);
                           const double f = std::norm(draw.xi);
                           for (std::size_t k = 0; k < np; ++k) {
                               const double v = std::log1p(p_linear[k] * f) /
                                                0.69314718055994530941723212145817657;
                               s[k].add(v);
                               s2[k].add(v * v);
                           }
                       }
                   });
    std::vector<MetricEstimate> out(np);
    const double n = static_cast<double>(run.trials);
    for (std::size_t k = 0; k < np; ++k) {
        Kahan s, s2;
        for (std::uint32_t c = 0; c < run.chunks; ++c) {
            s.add(sums[c][k].get());
            s2.add(sqs[c][k].get());
        }
        const double mean = s.get() / n;
        double var = 0.0;
        if (run.trials > 1) var = std::max(0.0, (s2.get() - n * mean * mean) / (n - 1.0));
        out[k] = {mean, std::sqrt(var / n), run.trials};
    }
    return out;
}

MetricEstimate estimate_spectral_efficiency(const channel::Scenario& scenario,
                                            double p_linear, const RunSpec& run,
                                            int threads) {
    return estimate_spectral_efficiency_multi(scenario, {p_linear}, run, threads)[0];
}

analytic::CdfCurve empirical_cdf(const channel::Scenario& scenario, double p_linear,
                                 const std::vector<double>& grid, const RunSpec& run,
                                 int threads) {
    if (!(p_linear > 0.0)) throw std::domain_error("empirical_cdf: p > 0 required");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("empirical_cdf: grid must be sorted");
    if (!grid.empty() && grid.front() < 0.0)
        throw std::invalid_argument("empirical_cdf: grid must be nonnegative");
    const std::size_t ng = grid.size();
    // bins[k] counts draws whose first grid point >= gamma is k; the CDF at
    // grid[k] is then the prefix sum over bins 0..k.
    std::vector<std::vector<std::uint64_t>> bins(run.chunks,
                                                 std::vector<std::uint64_t>(ng + 1, 0));
    for_each_chunk(scenario, run, threads,
                   [&](std::uint32_t c, std::uint64_t n, rng::Philox4x64& gen) {
                       auto& bin = bins[c];
                       for (std::uint64_t i = 0; i < n; ++i) {
                           const auto draw = channel::draw_block(scenario, gen);
                           const double g = p_linear * std::norm(draw.xi);
                           const auto it = std::lower_bound(grid.begin(), grid.end(), g);
                           ++bin[static_cast<std::size_t>(it - grid.begin())];
                       }
                   });
    analytic::CdfCurve curve;
    curve.grid = grid;
    curve.values.resize(ng, 0.0);
    std::uint64_t cum = 0;
    for (std::size_t k = 0; k < ng; ++k) {
        for (std::uint32_t c = 0; c < run.chunks; ++c) cum += bins[c][k];
        curve.values[k] = static_cast<double>(cum) / static_cast<double>(run.trials);
    }
    return curve;
}

std::vector<double> snr_factor_samples(const channel::Scenario& scenario, const RunSpec& run,
                                       int threads) {
    std::vector<std::uint64_t> offsets(run.chunks + 1, 0);
    for (std::uint32_t c = 0; c < run.chunks; ++c)
        offsets[c + 1] = offsets[c] + chunk_trials(run, c);
    std::vector<double> out(run.trials);
    for_each_chunk(scenario, run, threads,
                   [&](std::uint32_t c, std::uint64_t n, rng::Philox4x64& gen) {
                       double* dst = out.data() + offsets[c];
                       for (std::uint64_t i = 0; i < n; ++i) {
                           const auto draw = channel::draw_block(scenario, gen);
                           dst[i] = std::norm(draw.xi);
                       }
                   });
    return out;
}

double ks_distance(const analytic::CdfCurve& a, const analytic::CdfCurve& b) {
    if (a.grid != b.grid)
        throw std::invalid_argument("ks_distance: curves must share an identical grid");
    double d = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        d = std::max(d, std::fabs(a.values[i] - b.values[i]));
    return d;
}

} // namespace risioi::mc
