#pragma once

#include <vector>

#include <Eigen/Dense>

#include "fracid/power_series.hpp"

namespace fracid {

// Shifted Jacobi polynomial P_m^{(0,-a)}(t / t_K) expanded into monomials of t.
PowerSeries jacobi_shifted(int m, double a, double t_K);

// Mixed basis {t^{beta_1}, ..., t^{beta_I}, P_0, ..., P_{J-1}} on [0, t_K].
class DesignBasis {
public:
    DesignBasis(std::vector<double> power_exponents, int jacobi_count, double weight_exponent, double horizon);

    const std::vector<double>& power_exponents() const { return betas_; }
    int jacobi_count() const { return jacobi_count_; }
    double weight_exponent() const { return a_; }
    double horizon() const { return t_K_; }
    int size() const { return static_cast<int>(elements_.size()); }

    const PowerSeries& element(int j) const { return elements_.at(static_cast<std::size_t>(j)); }
    const std::vector<PowerSeries>& elements() const { return elements_; }

    // sum_j q_j e_j(t) as a single series.
    PowerSeries combine(const Eigen::VectorXd& q) const;

private:
    std::vector<double> betas_;
    int jacobi_count_;
    double a_;
    double t_K_;
    std::vector<PowerSeries> elements_;
};

// Uniform power grid beta_i = i / count, i = 1..count.
std::vector<double> uniform_betas(int count);

// E_{ij} = e_j(t_i).
Eigen::MatrixXd design_matrix(const DesignBasis& basis, const std::vector<double>& times);

// H_{lm} = int_0^{t_K} t^{-a} e_l(t) e_m(t) dt, computed from the monomial expansions.
Eigen::MatrixXd gram_matrix(const DesignBasis& basis);

}  // namespace fracid
