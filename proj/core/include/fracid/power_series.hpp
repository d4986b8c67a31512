#pragma once

#include <cstddef>
#include <vector>

namespace fracid {

struct Term {
    double coef = 0.0;
    double exponent = 0.0;
};

// Finite generalized power series  sum_k c_k t^{g_k}  with every g_k > -1.
//
// Terms are kept sorted by exponent; exponents closer than 1e-12 are merged
// and exact zero coefficients are dropped. Exponents within 1e-12 of an
// integer are snapped to it so polynomial parts stay recognisable.
class PowerSeries {
public:
    static constexpr double kMergeTolerance = 1e-12;

    PowerSeries() = default;
    explicit PowerSeries(std::vector<Term> terms);

    static PowerSeries constant(double c);
    static PowerSeries monomial(double coef, double exponent);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    // Requires t >= 0; at t = 0 every exponent must be non-negative.
    double operator()(double t) const;
    double evaluate(double t) const { return (*this)(t); }

    // Coefficient of t^0 (zero when absent).
    double constant_term() const;
    double min_exponent() const;
    // True when every exponent is a non-negative integer.
    bool is_polynomial() const;

    PowerSeries operator-() const;
    PowerSeries& operator+=(const PowerSeries& other);
    PowerSeries& operator-=(const PowerSeries& other);
    PowerSeries& operator*=(double s);

    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend PowerSeries operator*(PowerSeries a, double s) { return a *= s; }
    friend PowerSeries operator*(double s, PowerSeries a) { return a *= s; }
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);

private:
    void normalize();
    std::vector<Term> terms_;
};

// Caputo derivative of order mu in (0,1), termwise:
//   D^mu t^g = Gamma(g+1)/Gamma(g+1-mu) t^{g-mu},  constants map to zero.
// Input exponents must be >= 0.
PowerSeries caputo_series(const PowerSeries& s, double mu);

// Riemann-Liouville integral: omega_theta * s with omega_theta(t) = t^{theta-1}/Gamma(theta).
PowerSeries rl_convolve(double theta, const PowerSeries& s);

// Time convolution (k * s)(t) = int_0^t k(t - tau) s(tau) dtau.
PowerSeries kernel_convolve(const PowerSeries& k, const PowerSeries& s);

// D^mu (rho s) for a polynomial multiplier rho, via the exact product.
PowerSeries caputo_product(const PowerSeries& rho, const PowerSeries& s, double mu);

}  // namespace fracid
