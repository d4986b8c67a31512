#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "fracid/basis.hpp"
#include "fracid/power_series.hpp"

namespace fracid {

// A geometric sequence start * ratio^{i}, i = 0..count-1.
struct GeometricGrid {
    double start = 1.0;
    double ratio = 0.5;
    int count = 2;

    std::vector<double> values() const;
    void validate(const char* name) const;
};

struct RegularizationGrid {
    GeometricGrid sigma;
    GeometricGrid tbar;
};

struct FitResult {
    Eigen::VectorXd q;
    double residual_norm = 0.0;
    int effective_rank = 0;
    PowerSeries psi;  // the fitted function sum_j q_j e_j
};

// Minimiser of |E q - y|^2 + sigma q^T H q (minimum-norm when not unique).
//
// The penalty is factored as H = R^T R and the stacked least-squares problem
// [E; sqrt(sigma) R] q = [y; 0] is solved by SVD with relative truncation
// tolerance rcond. This has the same solution set as the normal equations
// (E^T E + sigma H) q = E^T y but squares no condition number.
Eigen::VectorXd tikhonov_coefficients(const Eigen::MatrixXd& E, const Eigen::MatrixXd& H, const Eigen::VectorXd& y,
                                      double sigma, double rcond = 1e-12, int* rank = nullptr);

FitResult tikhonov_solve(const Eigen::MatrixXd& E, const Eigen::MatrixXd& H, const Eigen::VectorXd& y, double sigma,
                         double rcond = 1e-12);

// Fit bound to a basis: the coefficient vector plus the fitted series.
FitResult tikhonov_fit(const DesignBasis& basis, const std::vector<double>& times, const Eigen::VectorXd& y,
                       double sigma, double rcond = 1e-12);

struct QuasiOptResult {
    int sigma_index = -1;  // zero-based index into the sigma grid
    int tbar_index = -1;   // zero-based index into the tbar grid
    double sigma = 0.0;
    double tbar = 0.0;
    double value = 0.0;
    Eigen::MatrixXd trace;              // estimator values, rows = sigma, cols = tbar
    std::vector<int> column_choice;     // per tbar column, chosen sigma index or -1 if skipped
};

// Two-stage quasi-optimality rule on a precomputed table of estimator values.
// Non-finite entries are excluded; ties go to the smallest index.
QuasiOptResult quasiopt_select(const Eigen::MatrixXd& values);

QuasiOptResult quasiopt_select(const RegularizationGrid& grid, const std::function<double(double, double)>& estimator);

}  // namespace fracid
