#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracid/model.hpp"
#include "fracid/regularize.hpp"

namespace fracid {

struct Observation {
    std::vector<double> times;
    std::vector<double> values;
    double psi0 = 0.0;

    void validate() const;
};

enum class Strategy { First, Second };

struct ReconConfig {
    std::vector<double> betas = uniform_betas(3);
    int jacobi_count = 6;
    double weight_exponent = 0.99;

    GeometricGrid sigma{0.5, 0.5, 60};
    std::optional<double> tbar_start;  // defaults to the second-to-last observation time
    double tbar_ratio = 0.5;
    int tbar_count = 10;

    GeometricGrid sigma_hat{0x1p-20, 0.5, 15};
    std::optional<double> that_start;  // defaults to the second-to-last observation time
    double that_ratio = 0.5;
    int that_count = 10;

    double lambda = 0.5;
    std::optional<double> t0;  // defaults to the second-to-last observation time
    double hat_spread = 0.05;
    Strategy strategy = Strategy::Second;
    // Type II only: divide the lead coefficient by its value at t = 0 in the
    // order-one estimator. Same limit as the raw form, without its ln(rho_1(0))/ln(t) offset.
    bool normalize_type2_lead = true;
    double rcond = 1e-12;

    void validate() const;
};

enum class StageStatus { NotRun, Ok, Clipped, Failed };

const char* to_string(StageStatus s);

struct Estimate {
    double nu1 = 0.0;
    double nu2_bar = 0.0;      // Strategy 1, after range policy
    double nu2_bar_raw = 0.0;
    double nu2_hat = 0.0;      // Strategy 2, after range policy
    double nu2_hat_raw = 0.0;
    double nu_second = 0.0;    // the value handed to Step 3 and reported
    std::optional<double> rho;

    double sigma_bar = 0.0;
    double tbar = 0.0;
    double sigma_hat = 0.0;
    double that = 0.0;
    double lambda = 0.5;
    double t0 = 0.0;
    std::vector<double> hat_betas;

    StageStatus step1 = StageStatus::NotRun;
    StageStatus step2_first = StageStatus::NotRun;
    StageStatus step2_second = StageStatus::NotRun;
    StageStatus step3 = StageStatus::NotRun;
    std::string message;

    QuasiOptResult step1_trace;
    QuasiOptResult step2_trace;
    FitResult fit_bar;
    FitResult fit_hat;

    bool valid() const;
    std::string status() const;
};

// ln|psi(tbar) - psi0| / ln tbar  (Type I), or the Type II analogue with the
// lead coefficient. Returns NaN when the difference vanishes.
double nu1_at(const FitResult& fit, const ModelSpec& model, double tbar, bool normalize_type2_lead = true);

// c(t) = gbar - d (K * I) + a0 psi + K * (b0 psi) - I  on the fitted series.
double cfun_delta(const FitResult& fit, const ModelSpec& model, double t);

// Evaluates the auxiliary functions for one fit and one lead-order estimate.
// Everything except a tabulated gbar is folded into closed-form series once.
class AuxiliaryFunctions {
public:
    AuxiliaryFunctions(const PowerSeries& psi, const ModelSpec& model, double nu1);

    double cfun(double t) const;
    // The target term alone: rho_* D^nu_* psi (Type I) or D^nu_* (rho_* psi) (Type II).
    double ftilde(double t) const;
    // ftilde divided by rho_*(t) for a known Type I coefficient, ftilde otherwise.
    double ffun(double t) const;
    const PowerSeries& lead_derivative() const { return lead_derivative_; }

private:
    TimeFunction gbar_;
    PowerSeries c_series_;       // cfun without gbar
    PowerSeries ftilde_series_;  // ftilde without the gbar contribution
    double target_sign_;
    std::optional<PowerSeries> divisor_;  // rho_* for a known Type I target
    PowerSeries lead_derivative_;  // D^nu1 psi
};

double ffun_delta(const FitResult& fit, const ModelSpec& model, double nu1, double t);

// nu1 - log_lambda |F(lambda tbar) / F(tbar)|; NaN when undefined.
double nu2_at(const FitResult& fit, const ModelSpec& model, double nu1, double tbar, double lambda);

// ftilde(t0) / (omega_{nu1-nu2} * D^{nu1} psi)(t0).
double rho_at(const FitResult& fit, const ModelSpec& model, double nu1, double nu2, double t0);

// Neighbourhood basis exponents {nu1 - h, nu1, nu1 + h} clipped to [0.01, 0.99]
// (generalised to any count, duplicates removed).
std::vector<double> hat_exponents(double nu1, int count, double spread);

Estimate identify_pipeline(const Observation& obs, const ModelSpec& model, const ReconConfig& config);

}  // namespace fracid
