#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fracid/identify.hpp"
#include "fracid/power_series.hpp"

namespace fracid {

// sign * rho(t) D^order u
struct DirectTerm {
    double order = 0.5;
    PowerSeries coefficient = PowerSeries::constant(1.0);
    double sign = 1.0;
};

// Problem  sum_j sign_j rho_j D^{nu_j} u - u_xx - a0 u - K * (u_xx + b0 u) = g
// on (l1, l2) x (0, T] with homogeneous Neumann data.
struct DirectConfig {
    double l1 = 0.0;
    double l2 = 1.0;
    int nx = 64;
    double horizon = 0.002;
    int nt = 512;
    std::vector<DirectTerm> terms;
    PowerSeries a0;
    PowerSeries b0;
    std::optional<PowerSeries> kernel;
    std::function<double(double, double)> forcing;  // g(x, t)
    std::function<double(double)> initial;          // u0(x)
    double neumann = 0.0;

    void validate() const;
};

struct DirectSolution {
    std::vector<double> x;
    Eigen::VectorXd u;  // field at the final time
    Observation psi_trace;

    // Linear interpolation of the trace.
    double psi_at(double t) const;
};

DirectSolution solve_direct(const DirectConfig& cfg);

}  // namespace fracid
