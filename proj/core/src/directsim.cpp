#include "fracid/directsim.hpp"

#include <algorithm>
#include <cmath>

#include "fracid/errors.hpp"
#include "fracid/special.hpp"

namespace fracid {

void DirectConfig::validate() const {
    if (!(l2 > l1)) throw ConfigError("direct: empty spatial interval");
    if (nx < 8 || nt < 8) throw ConfigError("direct: nx and nt must be at least 8");
    if (!(horizon > 0.0)) throw ConfigError("direct: horizon must be positive");
    if (terms.empty()) throw ConfigError("direct: at least one fractional term required");
    for (const auto& term : terms) {
        if (!(term.order > 0.0 && term.order < 1.0)) throw ConfigError("direct: orders must lie in (0,1)");
        if (term.sign != 1.0 && term.sign != -1.0) throw ConfigError("direct: term sign must be +1 or -1");
        if (term.coefficient.min_exponent() < 0.0) throw ConfigError("direct: coefficients must be regular at t = 0");
    }
    if (!forcing || !initial) throw ConfigError("direct: forcing and initial data required");
    if (neumann != 0.0) throw ConfigError("direct: only homogeneous Neumann data is supported");
    if (a0.min_exponent() < 0.0 || b0.min_exponent() < 0.0) throw ConfigError("direct: a0, b0 must be regular at t = 0");
}

double DirectSolution::psi_at(double t) const {
    const auto& ts = psi_trace.times;
    const auto& vs = psi_trace.values;
    if (t < ts.front() || t > ts.back() * (1.0 + 1e-12)) throw DomainError("psi_at: time outside simulated horizon");
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    if (it == ts.end()) return vs.back();
    const auto k = static_cast<std::size_t>(it - ts.begin());
    const double w = (t - ts[k - 1]) / (ts[k] - ts[k - 1]);
    return (1.0 - w) * vs[k - 1] + w * vs[k];
}

namespace {

Eigen::VectorXd laplacian(const Eigen::VectorXd& u, double h) {
    const Eigen::Index n = u.size();
    Eigen::VectorXd out(n);
    const double ih2 = 1.0 / (h * h);
    out[0] = 2.0 * (u[1] - u[0]) * ih2;
    for (Eigen::Index i = 1; i + 1 < n; ++i) out[i] = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * ih2;
    out[n - 1] = 2.0 * (u[n - 2] - u[n - 1]) * ih2;
    return out;
}

double trapezoid(const Eigen::VectorXd& u, double h) {
    return h * (u.sum() - 0.5 * (u[0] + u[u.size() - 1]));
}

// int_{a}^{b} K(t_n - s) ds with K a power series, a = t_m, b = t_{m+1}.
double kernel_cell(const PowerSeries& k, double tn, double a, double b) {
    double sum = 0.0;
    for (const auto& term : k.terms()) {
        const double e = term.exponent + 1.0;
        const double hi = std::pow(tn - a, e);
        const double lo = tn - b > 0.0 ? std::pow(tn - b, e) : 0.0;
        sum += term.coef * (hi - lo) / e;
    }
    return sum;
}

}  // namespace

DirectSolution solve_direct(const DirectConfig& cfg) {
    cfg.validate();
    const int N = cfg.nx;
    const int Nt = cfg.nt;
    const double h = (cfg.l2 - cfg.l1) / N;
    const double tau = cfg.horizon / Nt;
    const Eigen::Index n_nodes = N + 1;

    DirectSolution sol;
    sol.x.resize(static_cast<std::size_t>(n_nodes));
    for (Eigen::Index i = 0; i < n_nodes; ++i) sol.x[static_cast<std::size_t>(i)] = cfg.l1 + static_cast<double>(i) * h;

    // L1 weights b_k = (k+1)^{1-nu} - k^{1-nu} and scalings tau^{-nu}/Gamma(2-nu).
    const std::size_t M = cfg.terms.size();
    std::vector<std::vector<double>> weights(M, std::vector<double>(static_cast<std::size_t>(Nt)));
    std::vector<double> scale(M);
    for (std::size_t j = 0; j < M; ++j) {
        const double nu = cfg.terms[j].order;
        scale[j] = std::pow(tau, -nu) / gamma_fn(2.0 - nu);
        for (int k = 0; k < Nt; ++k)
            weights[j][static_cast<std::size_t>(k)] = std::pow(k + 1.0, 1.0 - nu) - std::pow(static_cast<double>(k), 1.0 - nu);
    }

    std::vector<Eigen::VectorXd> history;  // U^0 .. U^{n-1}
    std::vector<Eigen::VectorXd> memory;   // W^m = U_xx + b0 U at t_m
    history.reserve(static_cast<std::size_t>(Nt) + 1);
    Eigen::VectorXd u0(n_nodes);
    for (Eigen::Index i = 0; i < n_nodes; ++i) u0[i] = cfg.initial(sol.x[static_cast<std::size_t>(i)]);
    history.push_back(u0);

    sol.psi_trace.times.push_back(0.0);
    sol.psi_trace.values.push_back(trapezoid(u0, h));
    sol.psi_trace.psi0 = sol.psi_trace.values.front();

    const double ih2 = 1.0 / (h * h);
    Eigen::VectorXd rhs(n_nodes);
    Eigen::VectorXd diag(n_nodes);
    Eigen::VectorXd lower(n_nodes);
    Eigen::VectorXd upper(n_nodes);

    for (int n = 1; n <= Nt; ++n) {
        const double tn = n * tau;
        const auto& prev = history.back();
        if (cfg.kernel) memory.push_back(laplacian(prev, h) + cfg.b0(tn - tau) * prev);

        double alpha = 0.0;
        rhs.setZero();
        for (std::size_t j = 0; j < M; ++j) {
            const double c = cfg.terms[j].sign * cfg.terms[j].coefficient(tn) * scale[j];
            alpha += c * weights[j][0];
            for (int k = 1; k < n; ++k) {
                const auto idx = static_cast<std::size_t>(n - k);
                rhs -= c * weights[j][static_cast<std::size_t>(k)] * (history[idx] - history[idx - 1]);
            }
        }
        rhs += alpha * prev;
        for (Eigen::Index i = 0; i < n_nodes; ++i) rhs[i] += cfg.forcing(sol.x[static_cast<std::size_t>(i)], tn);
        if (cfg.kernel) {
            for (int m = 0; m < n; ++m)
                rhs += kernel_cell(*cfg.kernel, tn, m * tau, (m + 1) * tau) * memory[static_cast<std::size_t>(m)];
        }

        // (alpha - a0) U - U_xx = rhs, Neumann ghost rows.
        const double a0 = cfg.a0(tn);
        diag.setConstant(alpha - a0 + 2.0 * ih2);
        lower.setConstant(-ih2);
        upper.setConstant(-ih2);
        upper[0] = -2.0 * ih2;
        lower[n_nodes - 1] = -2.0 * ih2;

        // Thomas algorithm.
        Eigen::VectorXd cp(n_nodes);
        Eigen::VectorXd dp(n_nodes);
        if (diag[0] == 0.0) throw NumericError("direct: singular tridiagonal system");
        cp[0] = upper[0] / diag[0];
        dp[0] = rhs[0] / diag[0];
        for (Eigen::Index i = 1; i < n_nodes; ++i) {
            const double den = diag[i] - lower[i] * cp[i - 1];
            if (den == 0.0 || !std::isfinite(den)) throw NumericError("direct: singular tridiagonal system");
            cp[i] = i + 1 < n_nodes ? upper[i] / den : 0.0;
            dp[i] = (rhs[i] - lower[i] * dp[i - 1]) / den;
        }
        Eigen::VectorXd next(n_nodes);
        next[n_nodes - 1] = dp[n_nodes - 1];
        for (Eigen::Index i = n_nodes - 2; i >= 0; --i) next[i] = dp[i] - cp[i] * next[i + 1];
        if (!next.allFinite()) throw NumericError("direct: non-finite solution");

        sol.psi_trace.times.push_back(tn);
        sol.psi_trace.values.push_back(trapezoid(next, h));
        history.push_back(std::move(next));
    }
    sol.u = history.back();
    return sol;
}

}  // namespace fracid
