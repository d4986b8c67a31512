#pragma once

namespace fracid {

// Euler Gamma function for x > 0 (Lanczos approximation, ~15 digits).
double gamma_fn(double x);

// Natural logarithm of Gamma for x > 0.
double log_gamma(double x);

// Two-parameter Mittag-Leffler function E_{theta1,theta2}(z) by its power series.
// Throws NumericError if the series does not settle within 500 terms.
double mittag_leffler(double theta1, double theta2, double z);

// Generalized binomial coefficient C(x, k) for real x and integer k >= 0.
double binomial(double x, int k);

}  // namespace fracid
