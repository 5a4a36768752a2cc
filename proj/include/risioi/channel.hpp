// Types and samplers for one coherence block of the multi-operator RIS
// channel. draw_block produces exact instantaneous-SNR samples: the reference
// RIS path is sampled element by element including discrete phase
// quantization; uncontrolled RIS paths carry independent full-circle phases.

#ifndef RISIOI_CHANNEL_HPP
#define RISIOI_CHANNEL_HPP

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "risioi/rng.hpp"

namespace risioi::channel {

struct LinkGeometry {
    double distance_m = 1.0;
    double pathloss_exponent = 2.0;

    double path_gain() const { return std::pow(distance_m, -pathloss_exponent); }
};

struct RicianLink {
    LinkGeometry geometry;
    double k_factor = 0.0;  // linear Rician K; 0 = Rayleigh
};

// q-bit discrete phase set S_l = l*pi/2^{q-1}, l = 0..2^q-1, or no
// quantization at all (perfect alignment).
struct Quantizer {
    static constexpr int kPerfect = -1;
    int bits = kPerfect;

    static Quantizer perfect() { return Quantizer{kPerfect}; }
    static Quantizer with_bits(int q) { return Quantizer{q}; }
    bool is_perfect() const { return bits == kPerfect; }
};

// How an uncontrolled RIS randomizes its phases, as seen by the reference
// receiver. Continuous is the model used by the closed forms; a discrete
// codebook is available for sensitivity studies.
enum class ExternalPhaseMode { kContinuousUniform, kDiscreteCodebook };

struct RisUnit {
    int num_elements = 0;
    Quantizer quantizer = Quantizer::perfect();
    RicianLink inbound;   // transmitter -> RIS
    RicianLink outbound;  // RIS -> receiver
    bool controlled = false;
    ExternalPhaseMode phase_mode = ExternalPhaseMode::kContinuousUniform;

    double gain_product() const {
        return inbound.geometry.path_gain() * outbound.geometry.path_gain();
    }
};

struct Scenario {
    std::string id = "scenario";
    std::optional<RicianLink> direct;        // k_factor must be 0 (Rayleigh)
    std::optional<RisUnit> reference_ris;    // controlled
    std::vector<RisUnit> external_ris;       // uncontrolled

    int reference_elements() const {
        return reference_ris ? reference_ris->num_elements : 0;
    }
    long long total_external_elements() const {
        long long m = 0;
        for (const auto& u : external_ris) m += u.num_elements;
        return m;
    }
    // Throws std::invalid_argument on violated invariants.
    void validate() const;
};

struct ChannelDraw {
    double z = 0.0;                    // direct amplitude Z >= 0
    std::complex<double> x{0.0, 0.0};  // reference-RIS aggregate
    std::complex<double> y{0.0, 0.0};  // external aggregate
    std::complex<double> xi{0.0, 0.0}; // Z + X + Y
};

// i.i.d. unit-power Rician entries h = sqrt(k/(1+k)) e^{j psi} +
// sqrt(1/(1+k)) w, psi uniform, w circular standard complex Gaussian.
std::vector<std::complex<double>> sample_rician_vector(int n, double kappa,
                                                       rng::Philox4x64& gen);

// Nearest codebook phase to `target` in circular distance; ties resolve to
// the lower codebook index. Returned value lies in [0, 2*pi).
double quantize_phase(double target, int q_bits);

// Wrap an angle to (-pi, pi].
double wrap_angle(double a);

ChannelDraw draw_block(const Scenario& scenario, rng::Philox4x64& gen);

// gamma = p |Xi|^2
double instantaneous_snr(const ChannelDraw& draw, double p_linear);

} // namespace risioi::channel

#endif
