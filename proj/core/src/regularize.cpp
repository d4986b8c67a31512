#include "fracid/regularize.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fracid/errors.hpp"

namespace fracid {

std::vector<double> GeometricGrid::values() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    double v = start;
    for (int i = 0; i < count; ++i) {
        out.push_back(v);
        v *= ratio;
    }
    return out;
}

void GeometricGrid::validate(const char* name) const {
    if (!(start > 0.0) || !std::isfinite(start)) throw ConfigError(std::string(name) + ": start must be positive");
    if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError(std::string(name) + ": ratio must lie in (0,1)");
    if (count < 2) throw ConfigError(std::string(name) + ": count must be at least 2");
}

Eigen::VectorXd tikhonov_coefficients(const Eigen::MatrixXd& E, const Eigen::MatrixXd& H, const Eigen::VectorXd& y,
                                      double sigma, double rcond, int* rank) {
    const Eigen::Index n = E.cols();
    if (H.rows() != n || H.cols() != n || y.size() != E.rows())
        throw ConfigError("tikhonov_solve: inconsistent dimensions");
    if (!E.allFinite() || !H.allFinite() || !y.allFinite() || !std::isfinite(sigma))
        throw NumericError("tikhonov_solve: non-finite input");
    if (!(sigma >= 0.0)) throw ConfigError("tikhonov_solve: sigma must be non-negative");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (H + H.transpose()));
    if (eig.info() != Eigen::Success) throw NumericError("tikhonov_solve: eigen-decomposition of H failed");
    const Eigen::VectorXd w = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXd R = w.asDiagonal() * eig.eigenvectors().transpose();

    Eigen::MatrixXd A(E.rows() + n, n);
    A << E, std::sqrt(sigma) * R;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(E.rows() + n);
    b.head(E.rows()) = y;

    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(rcond);
    Eigen::VectorXd q = svd.solve(b);
    if (rank) *rank = static_cast<int>(svd.rank());
    if (!q.allFinite()) throw NumericError("tikhonov_solve: non-finite solution");
    return q;
}

FitResult tikhonov_solve(const Eigen::MatrixXd& E, const Eigen::MatrixXd& H, const Eigen::VectorXd& y, double sigma,
                         double rcond) {
    FitResult r;
    r.q = tikhonov_coefficients(E, H, y, sigma, rcond, &r.effective_rank);
    r.residual_norm = (E * r.q - y).norm();
    return r;
}

FitResult tikhonov_fit(const DesignBasis& basis, const std::vector<double>& times, const Eigen::VectorXd& y,
                       double sigma, double rcond) {
    const Eigen::MatrixXd E = design_matrix(basis, times);
    const Eigen::MatrixXd H = gram_matrix(basis);
    FitResult r = tikhonov_solve(E, H, y, sigma, rcond);
    r.psi = basis.combine(r.q);
    return r;
}

QuasiOptResult quasiopt_select(const Eigen::MatrixXd& V) {
    const Eigen::Index K1 = V.rows();
    const Eigen::Index K2 = V.cols();
    QuasiOptResult res;
    res.trace = V;
    res.column_choice.assign(static_cast<std::size_t>(K2), -1);
    if (K1 < 2 || K2 < 2) throw SelectionError("quasiopt_select: each grid needs at least two entries");

    std::vector<double> picked(static_cast<std::size_t>(K2), std::numeric_limits<double>::quiet_NaN());
    for (Eigen::Index j = 0; j < K2; ++j) {
        double best = std::numeric_limits<double>::infinity();
        int arg = -1;
        for (Eigen::Index i = 1; i < K1; ++i) {
            const double d = std::abs(V(i, j) - V(i - 1, j));
            if (std::isfinite(d) && d < best) {
                best = d;
                arg = static_cast<int>(i);
            }
        }
        if (arg >= 0) {
            res.column_choice[static_cast<std::size_t>(j)] = arg;
            picked[static_cast<std::size_t>(j)] = V(arg, j);
        }
    }

    double best = std::numeric_limits<double>::infinity();
    int j0 = -1;
    for (Eigen::Index j = 1; j < K2; ++j) {
        const double d = std::abs(picked[static_cast<std::size_t>(j)] - picked[static_cast<std::size_t>(j - 1)]);
        if (std::isfinite(d) && d < best) {
            best = d;
            j0 = static_cast<int>(j);
        }
    }
    if (j0 < 0) throw SelectionError("quasiopt_select: fewer than two usable columns");
    res.tbar_index = j0;
    res.sigma_index = res.column_choice[static_cast<std::size_t>(j0)];
    res.value = picked[static_cast<std::size_t>(j0)];
    return res;
}

QuasiOptResult quasiopt_select(const RegularizationGrid& grid, const std::function<double(double, double)>& estimator) {
    grid.sigma.validate("sigma grid");
    grid.tbar.validate("tbar grid");
    const auto sig = grid.sigma.values();
    const auto tb = grid.tbar.values();
    Eigen::MatrixXd V(grid.sigma.count, grid.tbar.count);
    for (int i = 0; i < grid.sigma.count; ++i)
        for (int j = 0; j < grid.tbar.count; ++j) V(i, j) = estimator(sig[static_cast<std::size_t>(i)], tb[static_cast<std::size_t>(j)]);
    QuasiOptResult res = quasiopt_select(V);
    res.sigma = sig[static_cast<std::size_t>(res.sigma_index)];
    res.tbar = tb[static_cast<std::size_t>(res.tbar_index)];
    return res;
}

}  // namespace fracid
