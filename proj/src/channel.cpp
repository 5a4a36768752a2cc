#include "risioi/channel.hpp"

#include <stdexcept>

namespace risioi::channel {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

void check_link(const RicianLink& link, const char* what) {
    if (!(link.geometry.distance_m > 0.0))
        throw std::invalid_argument(std::string(what) + ": distance_m must be > 0");
    if (!(link.geometry.pathloss_exponent > 0.0))
        throw std::invalid_argument(std::string(what) + ": pathloss_exponent must be > 0");
    if (!(link.k_factor >= 0.0))
        throw std::invalid_argument(std::string(what) + ": k_factor must be >= 0");
}

void check_ris(const RisUnit& ris, const char* what) {
    if (ris.num_elements < 0)
        throw std::invalid_argument(std::string(what) + ": num_elements must be >= 0");
    if (!ris.quantizer.is_perfect() && ris.quantizer.bits < 1)
        throw std::invalid_argument(std::string(what) + ": quantizer bits must be >= 1");
    check_link(ris.inbound, what);
    check_link(ris.outbound, what);
}

// Rician magnitude |sqrt(k/(1+k)) + sqrt(1/(2(1+k))) (n1 + j n2)|; the
// uniform LoS phase rotates the whole variate and drops out of |.|.
double rician_magnitude(double los, double sigma, rng::Philox4x64& gen) {
    const double re = los + sigma * gen.next_normal();
    const double im = sigma * gen.next_normal();
    return std::sqrt(re * re + im * im);
}

std::complex<double> rician_sample(double los, double sigma, rng::Philox4x64& gen) {
    const auto [c, s] = gen.next_unit_vector();  // LoS phase e^{j psi}
    return {los * c + sigma * gen.next_normal(), los * s + sigma * gen.next_normal()};
}

} // namespace

void Scenario::validate() const {
    if (!direct && !reference_ris && external_ris.empty())
        throw std::invalid_argument("scenario: needs a direct link or at least one RIS");
    if (direct) {
        check_link(*direct, "direct");
        if (direct->k_factor != 0.0)
            throw std::invalid_argument("direct: k_factor is fixed to 0 (Rayleigh)");
    }
    if (reference_ris) {
        check_ris(*reference_ris, "reference_ris");
        if (!reference_ris->controlled)
            throw std::invalid_argument("reference_ris: must be controlled");
    }
    for (const auto& u : external_ris) {
        check_ris(u, "external_ris");
        if (u.controlled)
            throw std::invalid_argument("external_ris: must not be controlled");
    }
}

std::vector<std::complex<double>> sample_rician_vector(int n, double kappa,
                                                       rng::Philox4x64& gen) {
    if (n < 1) throw std::invalid_argument("sample_rician_vector: n >= 1 required");
    if (!(kappa >= 0.0)) throw std::domain_error("sample_rician_vector: kappa >= 0 required");
    const double los = std::sqrt(kappa / (1.0 + kappa));
    const double sigma = std::sqrt(0.5 / (1.0 + kappa));
    std::vector<std::complex<double>> h(n);
    for (int i = 0; i < n; ++i) h[i] = rician_sample(los, sigma, gen);
    return h;
}

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a > kPi) a -= kTwoPi;
    if (a <= -kPi) a += kTwoPi;
    return a;
}

double quantize_phase(double target, int q_bits) {
    if (q_bits < 1) throw std::invalid_argument("quantize_phase: q >= 1 required");
    const double levels = std::ldexp(1.0, q_bits);  // 2^q
    const double step = kTwoPi / levels;
    double t = std::fmod(target, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    // round-half-down picks the lower codebook index on exact midpoints
    double l = std::ceil(t / step - 0.5);
    if (l >= levels) l = 0.0;
    if (l < 0.0) l = 0.0;
    return l * step;
}

ChannelDraw draw_block(const Scenario& scenario, rng::Philox4x64& gen) {
    ChannelDraw draw;
    double phase_d = 0.0;
    if (scenario.direct) {
        // h_d circular standard Gaussian; Z = sqrt(g_d) |h_d|
        const double re = gen.next_normal() * 0.7071067811865475244;
        const double im = gen.next_normal() * 0.7071067811865475244;
        draw.z = std::sqrt(scenario.direct->geometry.path_gain()) * std::hypot(re, im);
        phase_d = std::atan2(im, re);
    }
    if (scenario.reference_ris && scenario.reference_ris->num_elements > 0) {
        const RisUnit& ris = *scenario.reference_ris;
        const double los1 = std::sqrt(ris.inbound.k_factor / (1.0 + ris.inbound.k_factor));
        const double sig1 = std::sqrt(0.5 / (1.0 + ris.inbound.k_factor));
        const double los2 = std::sqrt(ris.outbound.k_factor / (1.0 + ris.outbound.k_factor));
        const double sig2 = std::sqrt(0.5 / (1.0 + ris.outbound.k_factor));
        std::complex<double> acc{0.0, 0.0};
        for (int i = 0; i < ris.num_elements; ++i) {
            const std::complex<double> h1 = rician_sample(los1, sig1, gen);
            const std::complex<double> h2 = rician_sample(los2, sig2, gen);
            const double mag = std::abs(h1) * std::abs(h2);
            if (ris.quantizer.is_perfect()) {
                acc += mag;  // exact alignment: residual phase 0
            } else {
                const double chan = std::arg(h1) + std::arg(h2);
                const double phi = quantize_phase(phase_d - chan, ris.quantizer.bits);
                const double residual = wrap_angle(chan + phi - phase_d);
                acc += std::complex<double>(mag * std::cos(residual),
                                            mag * std::sin(residual));
            }
        }
        draw.x = std::sqrt(ris.gain_product()) * acc;
    }
    for (const auto& ris : scenario.external_ris) {
        if (ris.num_elements == 0) continue;
        const double los1 = std::sqrt(ris.inbound.k_factor / (1.0 + ris.inbound.k_factor));
        const double sig1 = std::sqrt(0.5 / (1.0 + ris.inbound.k_factor));
        const double los2 = std::sqrt(ris.outbound.k_factor / (1.0 + ris.outbound.k_factor));
        const double sig2 = std::sqrt(0.5 / (1.0 + ris.outbound.k_factor));
        const bool discrete = ris.phase_mode == ExternalPhaseMode::kDiscreteCodebook &&
                              !ris.quantizer.is_perfect();
        std::complex<double> acc{0.0, 0.0};
        for (int i = 0; i < ris.num_elements; ++i) {
            if (discrete) {
                // Literal element term g2 e^{j S_l} g1 with a uniformly random
                // codebook index (the external operator's setting is opaque).
                const std::complex<double> g1 = rician_sample(los1, sig1, gen);
                const std::complex<double> g2 = rician_sample(los2, sig2, gen);
                const double levels = std::ldexp(1.0, ris.quantizer.bits);
                const double idx = std::floor(levels * gen.next_uniform());
                acc += g1 * g2 * std::polar(1.0, idx * (kTwoPi / levels));
            } else {
                // The uniform element phase makes the product's phase uniform
                // and independent of the magnitudes, so only |g1||g2| and one
                // direction are drawn.
                const double mag = rician_magnitude(los1, sig1, gen) *
                                   rician_magnitude(los2, sig2, gen);
                const auto [c, s] = gen.next_unit_vector();
                acc += std::complex<double>(mag * c, mag * s);
            }
        }
        draw.y += std::sqrt(ris.gain_product()) * acc;
    }
    draw.xi = std::complex<double>(draw.z, 0.0) + draw.x + draw.y;
    return draw;
}

double instantaneous_snr(const ChannelDraw& draw, double p_linear) {
    if (!(p_linear > 0.0)) throw std::domain_error("instantaneous_snr: p > 0 required");
    return p_linear * std::norm(draw.xi);
}

} // namespace risioi::channel
