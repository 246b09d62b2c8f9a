#pragma once

namespace cop {

/// Standard normal density.
double normal_pdf(double x);

/// Standard normal CDF, computed through erfc. Absolute error is a few ulp,
/// far inside the 1e-7 budget the KDE estimator needs.
double normal_cdf(double x);

/**
 * Inverse standard normal CDF for p in (0,1).
 *
 * Wichura's algorithm AS 241 (PPND16), a pair of rational approximations
 * accurate to ~1e-16 relative error. Pure arithmetic apart from log/sqrt,
 * which keeps sampling reproducible for a fixed floating point environment.
 * Throws config_error for p outside (0,1).
 */
double normal_quantile(double p);

/// Inverse CDF of the Student-t distribution with 2 degrees of freedom,
/// closed form: t = (2p-1) / sqrt(2 p (1-p)).
double student_t2_quantile(double p);

} // namespace cop
