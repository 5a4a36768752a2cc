// Self-contained special-function kernels backing the closed-form channel
// statistics: log-gamma, regularized incomplete gamma, digamma, E1, the
// Rician amplitude mean, sinc and the first-order Marcum Q.
//
// All functions are pure, reentrant and operate in double precision.
// Domain violations throw std::domain_error.

#ifndef RISIOI_SPECFUN_HPP
#define RISIOI_SPECFUN_HPP

namespace risioi::specfun {

// ln Gamma(x), x > 0. Lanczos approximation, relative error < 1e-13.
double ln_gamma(double x);

// Regularized incomplete gamma pair, a > 0, x >= 0.
//   P(a,x) = gamma(a,x)/Gamma(a)   (lower),  Q(a,x) = Gamma(a,x)/Gamma(a).
// Series for x < a+1, Lentz continued fraction otherwise; P + Q == 1.
double lower_gamma_regularized(double a, double x);
double upper_gamma_regularized(double a, double x);

// psi(x), x > 0. Recurrence below 6, asymptotic Bernoulli series above.
double digamma(double x);

// Gamma(0,x) = E1(x), x > 0, and the scaled form e^x * E1(x).
double exp_integral_gamma0(double x);
double exp_integral_gamma0_scaled(double x);

// sin(x)/x with sinc(0) = 1.
double sinc(double x);

// E[|h|] of a unit-power Rician variate with K-factor kappa >= 0:
//   sqrt(pi/(4(kappa+1))) * 1F1(-1/2, 1; -kappa)
// via 1F1(-1/2,1;-k) = e^{-k/2} [(1+k) I0(k/2) + k I1(k/2)].
double rician_mean_factor(double kappa);

// First-order Marcum Q, a >= 0, b >= 0. Poisson-weighted Erlang-tail series
// with term-ratio stopping at 1e-14; absolute error < 1e-12.
double marcum_q1(double a, double b);

// Modified Bessel functions of the first kind (series / scaled asymptotic).
double bessel_i0(double x);
double bessel_i1(double x);

} // namespace risioi::specfun

#endif
