#include "fracid/identify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracid/errors.hpp"

namespace fracid {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kOrderMargin = 1e-3;

double second_to_last(const Observation& obs) { return obs.times[obs.times.size() - 2]; }

double term_order(const FdoTerm& term, double nu1) { return term.kind == OrderKind::UnknownLead ? nu1 : term.order; }

// The term's contribution rho D^nu psi (Type I) or D^nu(rho psi) (Type II), without its sign.
PowerSeries term_action(FdoType type, const PowerSeries& rho, const PowerSeries& psi, double nu) {
    if (type == FdoType::TypeI) return rho * caputo_series(psi, nu);
    return caputo_product(rho, psi, nu);
}

// Clip to (0, nu1) with a margin; returns the status.
StageStatus apply_range_policy(double raw, double nu1, double& out) {
    if (!std::isfinite(raw)) {
        out = kNaN;
        return StageStatus::Failed;
    }
    if (raw <= 0.0) {
        out = kOrderMargin;
        return StageStatus::Clipped;
    }
    if (raw >= nu1) {
        out = nu1 - kOrderMargin;
        return StageStatus::Clipped;
    }
    out = raw;
    return StageStatus::Ok;
}

std::vector<FitResult> fit_all(const DesignBasis& basis, const Observation& obs, const std::vector<double>& sigmas,
                               double rcond) {
    const Eigen::MatrixXd E = design_matrix(basis, obs.times);
    const Eigen::MatrixXd H = gram_matrix(basis);
    const Eigen::Map<const Eigen::VectorXd> y(obs.values.data(), static_cast<Eigen::Index>(obs.values.size()));
    std::vector<FitResult> fits;
    fits.reserve(sigmas.size());
    for (double s : sigmas) {
        FitResult r = tikhonov_solve(E, H, y, s, rcond);
        r.psi = basis.combine(r.q);
        fits.push_back(std::move(r));
    }
    return fits;
}

}  // namespace

void Observation::validate() const {
    if (times.size() != values.size()) throw ConfigError("observation: times and values differ in length");
    if (times.size() < 3) throw ConfigError("observation: at least three samples required");
    if (times.front() != 0.0) throw ConfigError("observation: first sample must be at t = 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw ConfigError("observation: times must be strictly increasing");
    for (double v : values)
        if (!std::isfinite(v)) throw ConfigError("observation: non-finite value");
}

void ReconConfig::validate() const {
    if (betas.empty()) throw ConfigError("recon: at least one power exponent required");
    if (jacobi_count < 0) throw ConfigError("recon: negative Jacobi count");
    if (!(weight_exponent > 0.0 && weight_exponent < 1.0)) throw ConfigError("recon: weight exponent must lie in (0,1)");
    sigma.validate("recon.sigma");
    sigma_hat.validate("recon.sigma_hat");
    GeometricGrid{1.0, tbar_ratio, tbar_count}.validate("recon.tbar");
    GeometricGrid{1.0, that_ratio, that_count}.validate("recon.that");
    if (tbar_start && !(*tbar_start > 0.0 && *tbar_start < 1.0)) throw ConfigError("recon: tbar start must lie in (0,1)");
    if (that_start && !(*that_start > 0.0 && *that_start < 1.0)) throw ConfigError("recon: that start must lie in (0,1)");
    if (!(lambda > 0.0 && lambda < 1.0)) throw ConfigError("recon: lambda must lie in (0,1)");
    if (t0 && !(*t0 > 0.0)) throw ConfigError("recon: t0 must be positive");
    if (!(hat_spread > 0.0 && hat_spread < 0.5)) throw ConfigError("recon: hat spread must lie in (0,0.5)");
    if (!(rcond > 0.0 && rcond < 1.0)) throw ConfigError("recon: rcond must lie in (0,1)");
}

const char* to_string(StageStatus s) {
    switch (s) {
        case StageStatus::NotRun: return "skipped";
        case StageStatus::Ok: return "ok";
        case StageStatus::Clipped: return "clipped";
        case StageStatus::Failed: return "failed";
    }
    return "unknown";
}

bool Estimate::valid() const {
    auto good = [](StageStatus s) { return s == StageStatus::Ok || s == StageStatus::NotRun; };
    return step1 == StageStatus::Ok && good(step2_first) && good(step2_second) && good(step3);
}

std::string Estimate::status() const {
    if (valid()) return "ok";
    std::ostringstream os;
    os << "step1=" << to_string(step1) << ";step2a=" << to_string(step2_first)
       << ";step2b=" << to_string(step2_second) << ";step3=" << to_string(step3);
    return os.str();
}

double nu1_at(const FitResult& fit, const ModelSpec& model, double tbar, bool normalize_type2_lead) {
    if (!(tbar > 0.0 && tbar < 1.0)) throw DomainError("nu1_at: tbar must lie in (0,1)");
    double diff;
    if (model.op.type == FdoType::TypeI) {
        diff = fit.psi(tbar) - model.psi0;
    } else {
        const PowerSeries& rho = *model.op.terms[model.op.lead_index()].coefficient;
        const double r0 = rho(0.0);
        if (normalize_type2_lead)
            diff = rho(tbar) / r0 * fit.psi(tbar) - model.psi0;
        else
            diff = rho(tbar) * fit.psi(tbar) - r0 * model.psi0;
    }
    if (diff == 0.0 || !std::isfinite(diff)) return kNaN;
    return std::log(std::abs(diff)) / std::log(tbar);
}

double cfun_delta(const FitResult& fit, const ModelSpec& model, double t) {
    PowerSeries rest = model.a0 * fit.psi - model.boundary_trace;
    if (model.kernel) {
        rest += kernel_convolve(*model.kernel, model.b0 * fit.psi);
        if (model.d != 0) rest -= static_cast<double>(model.d) * kernel_convolve(*model.kernel, model.boundary_trace);
    }
    return model.gbar(t) + rest(t);
}

AuxiliaryFunctions::AuxiliaryFunctions(const PowerSeries& psi, const ModelSpec& model, double nu1)
    : gbar_(model.gbar) {
    if (!(nu1 > 0.0 && nu1 < 1.0)) throw DomainError("lead order estimate must lie in (0,1)");
    const auto& op = model.op;
    c_series_ = model.a0 * psi - model.boundary_trace;
    if (model.kernel) {
        c_series_ += kernel_convolve(*model.kernel, model.b0 * psi);
        if (model.d != 0) c_series_ -= static_cast<double>(model.d) * kernel_convolve(*model.kernel, model.boundary_trace);
    }
    const std::size_t target = op.target_index();
    PowerSeries others;
    for (std::size_t j = 0; j < op.terms.size(); ++j) {
        if (j == target) continue;
        const auto& term = op.terms[j];
        others += term.sign * term_action(op.type, *term.coefficient, psi, term_order(term, nu1));
    }
    target_sign_ = op.terms[target].sign;
    ftilde_series_ = target_sign_ * (c_series_ - others);
    if (op.type == FdoType::TypeI && op.terms[target].coefficient) divisor_ = *op.terms[target].coefficient;
    lead_derivative_ = caputo_series(psi, nu1);
}

double AuxiliaryFunctions::cfun(double t) const { return gbar_(t) + c_series_(t); }

double AuxiliaryFunctions::ftilde(double t) const { return target_sign_ * gbar_(t) + ftilde_series_(t); }

double AuxiliaryFunctions::ffun(double t) const {
    const double f = ftilde(t);
    if (!divisor_) return f;
    const double r = (*divisor_)(t);
    if (r == 0.0) throw DomainError("ffun: target coefficient vanishes");
    return f / r;
}

double ffun_delta(const FitResult& fit, const ModelSpec& model, double nu1, double t) {
    return AuxiliaryFunctions(fit.psi, model, nu1).ffun(t);
}

namespace {

double nu2_from(const AuxiliaryFunctions& aux, double nu1, double tbar, double lambda) {
    double num;
    double den;
    try {
        num = aux.ffun(lambda * tbar);
        den = aux.ffun(tbar);
    } catch (const DomainError&) {
        return kNaN;
    }
    if (den == 0.0 || num == 0.0 || !std::isfinite(num) || !std::isfinite(den)) return kNaN;
    return nu1 - std::log(std::abs(num / den)) / std::log(lambda);
}

}  // namespace

double nu2_at(const FitResult& fit, const ModelSpec& model, double nu1, double tbar, double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("nu2_at: lambda must lie in (0,1)");
    return nu2_from(AuxiliaryFunctions(fit.psi, model, nu1), nu1, tbar, lambda);
}

double rho_at(const FitResult& fit, const ModelSpec& model, double nu1, double nu2, double t0) {
    if (!(nu2 < nu1)) throw OrderError("rho_at: second order must be smaller than the lead order");
    if (!(nu2 > 0.0)) throw OrderError("rho_at: second order must be positive");
    const AuxiliaryFunctions aux(fit.psi, model, nu1);
    const double den = rl_convolve(nu1 - nu2, aux.lead_derivative())(t0);
    if (den == 0.0 || !std::isfinite(den)) throw DegenerateObservationError("rho_at: vanishing denominator");
    return aux.ftilde(t0) / den;
}

std::vector<double> hat_exponents(double nu1, int count, double spread) {
    if (count < 1) throw ConfigError("hat_exponents: count must be positive");
    std::vector<double> out;
    const double centre = 0.5 * (count - 1);
    for (int k = 0; k < count; ++k) {
        const double b = std::clamp(nu1 + (k - centre) * spread, 0.01, 0.99);
        if (out.empty() || b > out.back()) out.push_back(b);
    }
    return out;
}

Estimate identify_pipeline(const Observation& obs, const ModelSpec& model, const ReconConfig& config) {
    obs.validate();
    model.validate();
    config.validate();
    if (std::abs(obs.values.front() - model.psi0) > 1e-8 * std::max(1.0, std::abs(model.psi0)))
        throw ConfigError("observation: value at t = 0 differs from the model's psi0");
    const int p = static_cast<int>(config.betas.size()) + config.jacobi_count;
    if (static_cast<int>(obs.times.size()) < p)
        throw ConfigError("observation has fewer samples than basis elements");
    const double tK = obs.times.back();
    const double t_ref = second_to_last(obs);

    Estimate est;
    est.lambda = config.lambda;
    est.t0 = config.t0.value_or(t_ref);

    // Step 1: lead order.
    const DesignBasis basis(config.betas, config.jacobi_count, config.weight_exponent, tK);
    const auto sigmas = config.sigma.values();
    const GeometricGrid tgrid{config.tbar_start.value_or(t_ref), config.tbar_ratio, config.tbar_count};
    tgrid.validate("recon.tbar");
    const auto tbars = tgrid.values();
    const auto fits = fit_all(basis, obs, sigmas, config.rcond);

    Eigen::MatrixXd V1(config.sigma.count, config.tbar_count);
    for (std::size_t i = 0; i < fits.size(); ++i)
        for (std::size_t j = 0; j < tbars.size(); ++j)
            V1(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                nu1_at(fits[i], model, tbars[j], config.normalize_type2_lead);
    est.step1_trace = quasiopt_select(V1);
    est.step1_trace.sigma = sigmas[static_cast<std::size_t>(est.step1_trace.sigma_index)];
    est.step1_trace.tbar = tbars[static_cast<std::size_t>(est.step1_trace.tbar_index)];
    est.nu1 = est.step1_trace.value;
    est.sigma_bar = est.step1_trace.sigma;
    est.tbar = est.step1_trace.tbar;
    est.fit_bar = fits[static_cast<std::size_t>(est.step1_trace.sigma_index)];
    if (!(est.nu1 > 0.0 && est.nu1 < 1.0)) {
        est.step1 = StageStatus::Failed;
        est.message = "lead order estimate outside (0,1)";
        return est;
    }
    est.step1 = StageStatus::Ok;

    // Step 2, Strategy 1: same fit and tbar as Step 1.
    est.nu2_bar_raw = nu2_at(est.fit_bar, model, est.nu1, est.tbar, config.lambda);
    est.step2_first = apply_range_policy(est.nu2_bar_raw, est.nu1, est.nu2_bar);

    // Step 2, Strategy 2: refit on a basis centred at the lead order.
    const FitResult* step3_fit = &est.fit_bar;
    if (config.strategy == Strategy::Second) {
        est.hat_betas = hat_exponents(est.nu1, static_cast<int>(config.betas.size()), config.hat_spread);
        const DesignBasis hat_basis(est.hat_betas, config.jacobi_count, config.weight_exponent, tK);
        const auto hat_sigmas = config.sigma_hat.values();
        const GeometricGrid hgrid{config.that_start.value_or(t_ref), config.that_ratio, config.that_count};
        hgrid.validate("recon.that");
        const auto thats = hgrid.values();
        const auto hat_fits = fit_all(hat_basis, obs, hat_sigmas, config.rcond);
        Eigen::MatrixXd V2(config.sigma_hat.count, config.that_count);
        for (std::size_t i = 0; i < hat_fits.size(); ++i) {
            const AuxiliaryFunctions aux(hat_fits[i].psi, model, est.nu1);
            for (std::size_t j = 0; j < thats.size(); ++j)
                V2(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    nu2_from(aux, est.nu1, thats[j], config.lambda);
        }
        try {
            est.step2_trace = quasiopt_select(V2);
        } catch (const SelectionError& e) {
            est.step2_second = StageStatus::Failed;
            est.message = e.what();
            return est;
        }
        est.step2_trace.sigma = hat_sigmas[static_cast<std::size_t>(est.step2_trace.sigma_index)];
        est.step2_trace.tbar = thats[static_cast<std::size_t>(est.step2_trace.tbar_index)];
        est.sigma_hat = est.step2_trace.sigma;
        est.that = est.step2_trace.tbar;
        est.nu2_hat_raw = est.step2_trace.value;
        est.step2_second = apply_range_policy(est.nu2_hat_raw, est.nu1, est.nu2_hat);
        est.fit_hat = hat_fits[static_cast<std::size_t>(est.step2_trace.sigma_index)];
        est.nu_second = est.nu2_hat;
        step3_fit = &est.fit_hat;
        if (est.step2_second == StageStatus::Failed) return est;
    } else {
        est.nu_second = est.nu2_bar;
        if (est.step2_first == StageStatus::Failed) return est;
    }

    // Step 3: unknown constant coefficient of the target term.
    if (model.op.target_coefficient_unknown()) {
        try {
            est.rho = rho_at(*step3_fit, model, est.nu1, est.nu_second, est.t0);
            est.step3 = std::isfinite(*est.rho) ? StageStatus::Ok : StageStatus::Failed;
        } catch (const NumericError& e) {
            est.step3 = StageStatus::Failed;
            est.message = e.what();
            est.rho.reset();
        }
    }
    return est;
}

}  // namespace fracid
