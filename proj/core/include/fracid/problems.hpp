#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fracid/identify.hpp"
#include "fracid/model.hpp"

namespace fracid {

enum class NoiseKind { None, FTN, STN, TTN };
enum class NoiseSign { Plus, Minus, Alternating };

struct NoiseSpec {
    NoiseKind kind = NoiseKind::None;
    double delta = 0.04;
    double nu1_for_shape = 0.5;
    NoiseSign sign = NoiseSign::Plus;
};

// Noise shape G(t): t|ln t|, t^nu, or t^nu |ln t|; t must lie in (0,1).
// `index` is the sample number, used only by the alternating sign policy.
double noise_g(const NoiseSpec& spec, double t, std::size_t index = 1);

// A benchmark problem: the exact observation and the model used to identify it.
struct Problem {
    PowerSeries psi;  // exact space integral of the solution
    ModelSpec model;
    double nu1 = 0.0;
    double nu_second = 0.0;
    std::optional<double> rho;  // true value of the unknown coefficient, if any
    std::function<double(double, double)> forcing;   // g(x, t) on the unit interval
    std::function<double(double, double)> solution;  // u(x, t)
};

// Type I, two terms: (1/2) D^nu - (1/4) D^{nu/2}, a0 = 2, b0 = 1/30, K = 1 + t.
// With `rho_unknown` the coefficient 1/4 is left for the pipeline to recover.
Problem example1_truth(double nu, bool rho_unknown = true);

// Type II, three terms: (1/2) at nu, -1/4 at nu/2, (1+t^2)/4 at nu/3 (the target),
// a0 = 2, b0 = 0, K = t^{-gamma}.
Problem example2_truth(double nu, double gamma = 0.5);

// t_k = k * step, k = 0..count.
std::vector<double> uniform_times(double step = 1e-4, int count = 21);

Observation sample_observation(const std::function<double(double)>& psi, double psi0, const std::vector<double>& times,
                               const NoiseSpec& noise);
Observation sample_observation(const PowerSeries& psi, const std::vector<double>& times, const NoiseSpec& noise);

}  // namespace fracid
