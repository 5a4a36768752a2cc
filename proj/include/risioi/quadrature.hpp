// Generalized Gauss-Laguerre rules for integrals against t^alpha e^{-t} on
// [0, inf). Weights are kept in log form: for Gamma-density expectations the
// linear weights span thousands of orders of magnitude.

#ifndef RISIOI_QUADRATURE_HPP
#define RISIOI_QUADRATURE_HPP

#include <stdexcept>
#include <vector>

namespace risioi::quadrature {

struct LaguerreRule {
    double alpha = 0.0;
    std::vector<double> nodes;        // ascending
    std::vector<double> log_weights;  // ln w_i; -inf where w_i underflows
};

// Nodes/weights by Golub-Welsch (implicit-shift QL on the Jacobi matrix).
// alpha > -1, n >= 1. Results are cached per (n, alpha); thread-safe.
const LaguerreRule& gauss_laguerre(int n, double alpha);

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace risioi::quadrature

#endif
