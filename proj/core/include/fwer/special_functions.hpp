#pragma once

#include "fwer/quadrature.hpp"

namespace fwer {

/// Standard normal density.
double std_normal_pdf(double x);

/// Standard normal CDF. Rational minimax erfc kernel; absolute error below
/// 1e-15 across the real line and monotone on any sampled grid.
double std_normal_cdf(double x);

/// Upper tail 1 - Phi(x), computed directly so the relative accuracy survives
/// far into the tail.
double std_normal_sf(double x);

/// Inverse of std_normal_cdf on (0, 1). Rational initial estimate refined by
/// two Newton steps against the CDF/tail; |Phi(result) - p| <= 1e-12.
/// Throws std::domain_error for p outside (0, 1).
double std_normal_quantile(double p);

/// The correlation integral
///   I(x, rho) = int_0^rho (1 - z^2)^(-1/2) * exp(-x^2 / (1 + z)) dz
/// evaluated by adaptive Gauss-Kronrod quadrature at absolute tolerance 1e-13.
/// Requires x > 0 and rho in [0, 1); the integrand is singular at z = 1.
QuadratureResult monhor_integral(double x, double rho);

/// Diagonal bivariate normal CDF P(X <= x, Y <= x) for standard margins with
/// correlation rho, via the single-integral identity
///   Phi(x)^2 + I(x, rho) / (2 pi).
double bvn_cdf_equal(double x, double rho);

/// Independent check of bvn_cdf_equal: integrates the conditioning identity
///   int phi(u) * Phi((x - rho u) / sqrt(1 - rho^2)) du  over u in (-8, x]
/// with adaptive Simpson at absolute tolerance 1e-10. Shares no code path
/// with monhor_integral.
double bvn_cdf_oracle(double x, double rho);

/// Closed-form lower bound on the diagonal bivariate CDF, valid for x >= 2:
///   Phi(x)^2 + asin(rho) * exp(-x^2 / (1 + rho/2)) / (2 pi).
/// Throws std::domain_error when x < 2.
double bvn_lower_bound_thm32(double x, double rho);

/// Weaker lower bound valid for all x > 0:
///   Phi(x)^2 + asin(rho) * exp(-x^2) / (2 pi).
double bvn_lower_bound_monhor(double x, double rho);

/// exp(-x^2 / 1.25) / (1 - Phi(x)) on [2, 5]; the quantity certified against
/// the piecewise C constants.
double threshold_M(double x);

/// (exp(-x^2) + exp(-x^2 / 1.25)) / 2; dominates 1 - Phi(x) for x <= 2.2.
double threshold_G(double x);

/// (exp(-x^2) + exp(-x^2 / 1.011375)) / 2; dominates 0.8 (1 - Phi(x)) for x <= 2.
double threshold_H(double x);

}  // namespace fwer
