#include "fracid/problems.hpp"

#include <cmath>

#include "fracid/errors.hpp"
#include "fracid/special.hpp"

namespace fracid {

namespace {

double bump(double x) { return x * x * (1.0 - x) * (1.0 - x); }

}  // namespace

double noise_g(const NoiseSpec& spec, double t, std::size_t index) {
    if (spec.kind == NoiseKind::None) return 0.0;
    if (!(t > 0.0 && t < 1.0)) throw DomainError("noise_g: t must lie in (0,1)");
    double g = 0.0;
    switch (spec.kind) {
        case NoiseKind::FTN: g = t * std::abs(std::log(t)); break;
        case NoiseKind::STN: g = std::pow(t, spec.nu1_for_shape); break;
        case NoiseKind::TTN: g = std::pow(t, spec.nu1_for_shape) * std::abs(std::log(t)); break;
        case NoiseKind::None: break;
    }
    switch (spec.sign) {
        case NoiseSign::Plus: return g;
        case NoiseSign::Minus: return -g;
        case NoiseSign::Alternating: return index % 2 == 1 ? g : -g;
    }
    return g;
}

Problem example1_truth(double nu, bool rho_unknown) {
    if (!(nu > 0.0 && nu < 1.0)) throw DomainError("example1_truth: nu must lie in (0,1)");
    const double g1 = gamma_fn(1.0 + nu);
    Problem p;
    p.nu1 = nu;
    p.nu_second = nu / 2.0;
    p.psi = PowerSeries({{1.0 / 30.0, 0.0}, {1.0 / 30.0, 1.0}, {1.0, nu}});

    auto& m = p.model;
    m.op.type = FdoType::TypeI;
    m.op.terms = {
        {OrderKind::UnknownLead, 0.0, PowerSeries::constant(0.5), 1.0},
        {OrderKind::UnknownSecond, 0.0, std::nullopt, -1.0},
    };
    if (rho_unknown)
        p.rho = 0.25;
    else
        m.op.terms[1].coefficient = PowerSeries::constant(0.25);
    m.a0 = PowerSeries::constant(2.0);
    m.b0 = PowerSeries::constant(1.0 / 30.0);
    m.kernel = PowerSeries({{1.0, 0.0}, {1.0, 1.0}});
    m.psi0 = 1.0 / 30.0;
    m.d = 0;
    // Integral over x of g1 + g2 + g3 below, using int bump = 1/30,
    // int (1 - 6x + 7x^2 - 2x^3 + x^4) = 1/30 and int (2 - 12x + 12x^2) = 0.
    m.gbar = PowerSeries({
        {g1 / 2.0, 0.0},
        {-g1 / (4.0 * gamma_fn(1.0 + nu / 2.0)), nu / 2.0},
        {1.0 / (60.0 * gamma_fn(2.0 - nu)), 1.0 - nu},
        {-1.0 / (120.0 * gamma_fn(2.0 - nu / 2.0)), 1.0 - nu / 2.0},
        {-2.0, nu},
        {-2.0 / 30.0, 0.0},
        {-2.0 / 30.0, 1.0},
        {-1.0 / (30.0 * (1.0 + nu)), 1.0 + nu},
        {-1.0 / (30.0 * (1.0 + nu) * (2.0 + nu)), 2.0 + nu},
        {-1.0 / 900.0, 1.0},
        {-1.0 / 900.0, 2.0},
        {-1.0 / 5400.0, 3.0},
    });

    p.forcing = [nu, g1](double x, double t) {
        const double b = bump(x);
        const double quartic = 1.0 - 6.0 * x + 7.0 * x * x - 2.0 * x * x * x + x * x * x * x;
        const double f1 = g1 / 2.0 - g1 / (4.0 * gamma_fn(1.0 + nu / 2.0)) * std::pow(t, nu / 2.0) +
                          b / 2.0 *
                              (std::pow(t, 1.0 - nu) / gamma_fn(2.0 - nu) -
                               std::pow(t, 1.0 - nu / 2.0) / (2.0 * gamma_fn(2.0 - nu / 2.0)));
        const double f2 = -2.0 * std::pow(t, nu) - 2.0 * (1.0 + t) * quartic;
        const double f3 = -std::pow(t, 1.0 + nu) / (30.0 * (1.0 + nu)) -
                          std::pow(t, 2.0 + nu) / (30.0 * (1.0 + nu) * (2.0 + nu)) -
                          (t + t * t + t * t * t / 6.0) * (b / 30.0 + 2.0 - 12.0 * x + 12.0 * x * x);
        return f1 + f2 + f3;
    };
    p.solution = [nu](double x, double t) { return bump(x) * (1.0 + t) + std::pow(t, nu); };
    return p;
}

Problem example2_truth(double nu, double gamma) {
    if (!(nu > 0.0 && nu < 1.0)) throw DomainError("example2_truth: nu must lie in (0,1)");
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("example2_truth: gamma must lie in (0,1)");
    const double g1 = gamma_fn(1.0 + nu);
    Problem p;
    p.nu1 = nu;
    p.nu_second = nu / 3.0;
    p.psi = PowerSeries({{1.0 / 30.0, 0.0}, {1.0, nu}});

    auto& m = p.model;
    m.op.type = FdoType::TypeII;
    m.op.terms = {
        {OrderKind::UnknownLead, 0.0, PowerSeries::constant(0.5), 1.0},
        {OrderKind::Known, nu / 2.0, PowerSeries::constant(-0.25), 1.0},
        {OrderKind::UnknownSecond, 0.0, PowerSeries({{0.25, 0.0}, {0.25, 2.0}}), 1.0},
    };
    m.a0 = PowerSeries::constant(2.0);
    m.b0 = PowerSeries();
    m.kernel = PowerSeries::monomial(1.0, -gamma);
    m.psi0 = 1.0 / 30.0;
    m.d = 0;
    // g3 carries the factor (1 - 6x + 6x^2), whose integral vanishes.
    m.gbar = PowerSeries({
        {g1 / 2.0, 0.0},
        {-g1 / (4.0 * gamma_fn(1.0 + nu / 2.0)), nu / 2.0},
        {1.0 / (60.0 * gamma_fn(3.0 - nu / 3.0)), 2.0 - nu / 3.0},
        {g1 / (4.0 * gamma_fn(1.0 + 2.0 * nu / 3.0)), 2.0 * nu / 3.0},
        {gamma_fn(3.0 + nu) / (4.0 * gamma_fn(3.0 + 2.0 * nu / 3.0)), 2.0 + 2.0 * nu / 3.0},
        {-2.0 / 30.0, 0.0},
        {-2.0, nu},
    });

    p.forcing = [nu, gamma, g1](double x, double t) {
        const double b = bump(x);
        const double quartic = 1.0 - 6.0 * x + 7.0 * x * x - 2.0 * x * x * x + x * x * x * x;
        const double f1 =
            b * (15.0 * g1 - 7.5 * g1 / gamma_fn(1.0 + nu / 2.0) * std::pow(t, nu / 2.0) +
                 std::pow(t, 2.0 - nu / 3.0) / (2.0 * gamma_fn(3.0 - nu / 3.0)) +
                 15.0 * g1 / (2.0 * gamma_fn(1.0 + 2.0 * nu / 3.0)) * std::pow(t, 2.0 * nu / 3.0) +
                 15.0 * gamma_fn(3.0 + nu) / (2.0 * gamma_fn(3.0 + 2.0 * nu / 3.0)) * std::pow(t, 2.0 + 2.0 * nu / 3.0));
        const double f2 = -2.0 * (1.0 + 30.0 * std::pow(t, nu)) * quartic;
        const double f3 = -2.0 * (1.0 - 6.0 * x + 6.0 * x * x) *
                          (std::pow(t, 1.0 - gamma) / (1.0 - gamma) +
                           30.0 * std::pow(t, 1.0 - gamma + nu) * gamma_fn(1.0 - gamma) * g1 /
                               gamma_fn(2.0 + nu - gamma));
        return f1 + f2 + f3;
    };
    p.solution = [nu](double x, double t) { return bump(x) * (1.0 + 30.0 * std::pow(t, nu)); };
    return p;
}

std::vector<double> uniform_times(double step, int count) {
    if (!(step > 0.0) || count < 1) throw ConfigError("uniform_times: positive step and count required");
    std::vector<double> t;
    for (int k = 0; k <= count; ++k) t.push_back(k * step);
    return t;
}

Observation sample_observation(const std::function<double(double)>& psi, double psi0, const std::vector<double>& times,
                               const NoiseSpec& noise) {
    if (times.empty() || times.front() != 0.0) throw ConfigError("sample_observation: times must start at 0");
    Observation obs;
    obs.times = times;
    obs.psi0 = psi0;
    obs.values.reserve(times.size());
    obs.values.push_back(psi0);
    const double delta = noise.kind == NoiseKind::None ? 0.0 : noise.delta;
    for (std::size_t k = 1; k < times.size(); ++k) {
        const double g = delta != 0.0 ? delta * noise_g(noise, times[k], k) : 0.0;
        obs.values.push_back(psi(times[k]) + g);
    }
    return obs;
}

Observation sample_observation(const PowerSeries& psi, const std::vector<double>& times, const NoiseSpec& noise) {
    return sample_observation([&psi](double t) { return psi(t); }, psi(0.0), times, noise);
}

}  // namespace fracid
