#include "risioi/analytic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "risioi/quadrature.hpp"
#include "risioi/specfun.hpp"

namespace risioi::analytic {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLn2 = 0.69314718055994530941723212145817657;

// Single amplitude-mean hook: any fading law with finite first two moments
// can be slotted in here; Rician (and its Rayleigh limit) is what ships.
double mean_amplitude(const channel::RicianLink& link) {
    return specfun::rician_mean_factor(link.k_factor);
}

} // namespace

QuantizerMoments quantizer_moments(const channel::Quantizer& q) {
    if (q.is_perfect()) return {1.0, 1.0};
    if (q.bits < 1) throw std::invalid_argument("quantizer_moments: q >= 1 required");
    // theta_l = sinc(2^{-q+l-1} pi); 2^{-q} underflows to 0 for huge q and
    // sinc(0) = 1 recovers the perfect-alignment limit.
    const double half_width = std::ldexp(kPi, -q.bits);
    return {specfun::sinc(half_width), specfun::sinc(2.0 * half_width)};
}

double aggregate_external_variance(const channel::Scenario& scenario) {
    double acc = 0.0;
    for (const auto& u : scenario.external_ris) acc += u.num_elements * u.gain_product();
    return acc;
}

Moments derive_moments(const channel::Scenario& scenario, YSplit split) {
    scenario.validate();
    Moments m;
    m.split = split;
    if (scenario.direct) m.v_d = scenario.direct->geometry.path_gain();
    double n_vx_px = 0.0;
    if (scenario.reference_ris && scenario.reference_ris->num_elements > 0) {
        const auto& ris = *scenario.reference_ris;
        const auto [th1, th2] = quantizer_moments(ris.quantizer);
        const double a1 = mean_amplitude(ris.inbound);
        const double a2 = mean_amplitude(ris.outbound);
        const double g = ris.gain_product();
        const double b = th1 * a1 * a2;
        m.mu_x = std::sqrt(g) * b;
        m.v_x = g * (1.0 - b * b);
        m.p_x = g * (th2 - b * b);
        m.n = ris.num_elements;
        n_vx_px = m.n * (m.v_x + m.p_x);
    }
    double mvy = 0.0;
    for (const auto& u : scenario.external_ris) {
        m.v_y.push_back(u.gain_product());
        m.m_list.push_back(u.num_elements);
        mvy += u.num_elements * u.gain_product();
    }
    m.sigma2 = (split == YSplit::kPaper) ? 0.5 * (n_vx_px + 2.0 * mvy)
                                         : 0.5 * (n_vx_px + mvy);
    if (!(m.sigma2 > 0.0))
        throw std::domain_error(
            "derive_moments: no RIS fading (sigma^2 = 0); use the no-RIS forms");
    m.gamma_bar = 4.0 * m.sigma2;
    const double nmu = static_cast<double>(m.n) * m.mu_x;
    m.m_n = (nmu * nmu + m.v_d + std::sqrt(kPi * m.v_d) * nmu) / m.gamma_bar;
    return m;
}

double snr_cdf(double x, double p_linear, const Moments& m) {
    if (!(x >= 0.0)) throw std::domain_error("snr_cdf: x >= 0 required");
    if (!(p_linear > 0.0)) throw std::domain_error("snr_cdf: p > 0 required");
    if (!(m.m_n > 0.0)) throw std::domain_error("snr_cdf: moments with m_n > 0 required");
    return specfun::lower_gamma_regularized(m.m_n, x / (p_linear * m.gamma_bar));
}

double outage_probability(double gamma_th, double p_linear, const Moments& m) {
    return snr_cdf(gamma_th, p_linear, m);
}

double outage_asymptotic(double gamma_th, double p_linear, const Moments& m) {
    if (!(gamma_th > 0.0)) throw std::domain_error("outage_asymptotic: gamma_th > 0 required");
    if (!(p_linear > 0.0)) throw std::domain_error("outage_asymptotic: p > 0 required");
    const double z = gamma_th / (p_linear * m.gamma_bar);
    return std::exp(m.m_n * std::log(z) - specfun::ln_gamma(m.m_n + 1.0));
}

double spectral_efficiency(double p_linear, const Moments& m) {
    if (!(p_linear > 0.0)) throw std::domain_error("spectral_efficiency: p > 0 required");
    if (!(m.m_n > 0.0))
        throw std::domain_error("spectral_efficiency: moments with m_n > 0 required");
    const double scale = p_linear * m.gamma_bar;
    const double ln_norm = specfun::ln_gamma(m.m_n);
    double prev = 0.0;
    bool have_prev = false;
    double last_delta = 0.0;
    for (int n = 64; n <= 1024; n *= 2) {
        const auto& rule = quadrature::gauss_laguerre(n, m.m_n - 1.0);
        // Kahan-compensated sum over exp(ln w_i - ln Gamma(m)) log1p(scale t_i)
        double sum = 0.0, comp = 0.0;
        for (int i = 0; i < n; ++i) {
            const double lw = rule.log_weights[i] - ln_norm;
            if (lw < -745.0) continue;  // weight underflow: zero contribution
            const double term = std::exp(lw) * std::log1p(scale * rule.nodes[i]);
            const double t = sum + term;
            comp += (std::fabs(sum) >= std::fabs(term)) ? (sum - t) + term : (term - t) + sum;
            sum = t;
        }
        const double val = (sum + comp) / kLn2;
        if (have_prev) {
            last_delta = std::fabs(val - prev);
            if (last_delta <= 1e-9 * std::max(std::fabs(val), 1e-300)) return val;
        }
        prev = val;
        have_prev = true;
    }
    std::ostringstream msg;
    msg << "spectral_efficiency: quadrature did not converge at 1024 nodes "
        << "(m_N = " << m.m_n << ", p*gamma_bar = " << scale
        << ", last doubling delta = " << last_delta << ")";
    throw quadrature::QuadratureError(msg.str());
}

double spectral_efficiency_asymptotic(double p_linear, const Moments& m) {
    const double v = p_linear * m.gamma_bar;
    if (!(v > 0.0))
        throw std::domain_error("spectral_efficiency_asymptotic: p*gamma_bar > 0 required");
    return std::log(v) * specfun::digamma(v) / kLn2;
}

double spectral_efficiency_asymptotic_deviation(double p_linear, const Moments& m) {
    const double exact = spectral_efficiency(p_linear, m);
    const double asy = spectral_efficiency_asymptotic(p_linear, m);
    return std::fabs(asy - exact) / std::max(std::fabs(exact), 1e-300);
}

double no_ris_cdf(double x, double p_linear, double m_total_vy, double v_d) {
    if (!(x >= 0.0)) throw std::domain_error("no_ris_cdf: x >= 0 required");
    if (!(p_linear > 0.0)) throw std::domain_error("no_ris_cdf: p > 0 required");
    if (!(m_total_vy >= 0.0) || !(v_d >= 0.0))
        throw std::domain_error("no_ris_cdf: variances must be >= 0");
    if (m_total_vy == 0.0 && v_d == 0.0)
        throw std::domain_error("no_ris_cdf: at least one variance must be positive");
    if (m_total_vy == 0.0) return -std::expm1(-x / (p_linear * v_d));
    if (v_d == 0.0) return -std::expm1(-x / (p_linear * m_total_vy));
    // Printed form, exponents kept verbatim (1/(M V_Y) + 1/V_d sums included).
    const double inv_sum = 1.0 / m_total_vy + 1.0 / v_d;
    const double t1 = std::exp(-x / (p_linear * m_total_vy));
    const double t2 = std::exp(-x / (p_linear * m_total_vy * v_d * inv_sum));
    const double t3 = std::exp(-x / (p_linear * m_total_vy * m_total_vy * inv_sum));
    return 1.0 - t1 - t2 * (1.0 - t3);
}

double no_ris_cdf_reduced(double x, double p_linear, double m_total_vy, double v_d) {
    if (!(x >= 0.0)) throw std::domain_error("no_ris_cdf_reduced: x >= 0 required");
    if (!(p_linear > 0.0)) throw std::domain_error("no_ris_cdf_reduced: p > 0 required");
    const double s = m_total_vy + v_d;
    if (!(s > 0.0)) throw std::domain_error("no_ris_cdf_reduced: v_d + M v_y > 0 required");
    return -std::expm1(-x / (p_linear * s));
}

NoRisSpectralEfficiency no_ris_spectral_efficiency(double p_linear, double m_total_vy,
                                                   double v_d) {
    if (!(p_linear > 0.0))
        throw std::domain_error("no_ris_spectral_efficiency: p > 0 required");
    if (!(m_total_vy > 0.0) || !(v_d > 0.0))
        throw std::domain_error("no_ris_spectral_efficiency: positive variances required");
    NoRisSpectralEfficiency out;
    // The printed form mixes M and V_Y with unequal powers, so it is not a
    // function of the aggregate alone; it is evaluated at M = 1 with V_Y
    // carrying the whole aggregate. Printed arguments:
    //   a = 1/(p M V_Y + p V_d V_Y^2)
    //   b = V_d/(p (M V_Y)^2 + p V_d V_Y^3)
    //   d = (V_d + M V_Y)/(p M V_Y^2 (M + V_d V_Y))
    const double vy = m_total_vy;
    const double a = 1.0 / (p_linear * (vy + v_d * vy * vy));
    const double b = v_d / (p_linear * (vy * vy + v_d * vy * vy * vy));
    const double d = (v_d + vy) / (p_linear * vy * vy * (1.0 + v_d * vy));
    const double f = 1.0 / (p_linear * vy);
    // e^{a+b} Gamma(0,d) = e^{a+b-d} * [e^d Gamma(0,d)], all scaled.
    const double delta = a + b - d;
    const double t1 = specfun::exp_integral_gamma0_scaled(a);
    const double t2 = std::exp(delta) * specfun::exp_integral_gamma0_scaled(d);
    const double t3 = specfun::exp_integral_gamma0_scaled(f);
    out.as_printed = (t1 - t2 + t3) / kLn2;
    const double c = 1.0 / (p_linear * (v_d + m_total_vy));
    out.reduced = specfun::exp_integral_gamma0_scaled(c) / kLn2;
    out.rel_deviation =
        std::fabs(out.as_printed - out.reduced) / std::max(std::fabs(out.reduced), 1e-300);
    return out;
}

} // namespace risioi::analytic
