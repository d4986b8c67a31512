// Evaluates the eight acceptance criteria and prints one PASS/FAIL line for each.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fracid/directsim.hpp"
#include "fracid/identify.hpp"
#include "fracid/problems.hpp"
#include "fracid/special.hpp"
#include "oracles.hpp"

using namespace fracid;

namespace {

constexpr std::array<double, 8> kNus = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
constexpr std::array<double, 8> kTable1Nu1 = {0.0999, 0.1999, 0.2999, 0.3999, 0.4999, 0.5994, 0.6986, 0.7954};
constexpr std::array<double, 8> kTable2Nu1 = {0.0999, 0.1999, 0.2999, 0.3999, 0.4999, 0.5998, 0.6996, 0.7987};

int passed = 0;

void report(int id, bool ok, const std::string& summary) {
    if (ok) ++passed;
    std::printf("AC%d %s: %s\n", id, ok ? "PASS" : "FAIL", summary.c_str());
    std::fflush(stdout);
}

void detail(const char* fmt, double a = 0, double b = 0, double c = 0, double d = 0, double e = 0) {
    std::printf("    ");
    std::printf(fmt, a, b, c, d, e);
    std::printf("\n");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Estimate run(const Problem& p, NoiseKind kind) {
    NoiseSpec noise;
    noise.kind = kind;
    noise.nu1_for_shape = p.nu1;
    return identify_pipeline(sample_observation(p.psi, uniform_times(), noise), p.model, ReconConfig{});
}

std::vector<Estimate> sweep(bool second_example, NoiseKind kind) {
    std::vector<Estimate> out;
    for (double nu : kNus) out.push_back(run(second_example ? example2_truth(nu) : example1_truth(nu), kind));
    return out;
}

bool relative_close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

// rho1 D^nu1 psi - rho2 D^nu2 psi = gbar for psi = 0.1 + t^nu1, a0 = b0 = 0.
ModelSpec pure_power_model(double nu1, double nu2, double rho2) {
    ModelSpec m;
    m.op.type = FdoType::TypeI;
    m.op.terms = {
        {OrderKind::UnknownLead, 0.0, PowerSeries::constant(0.5), 1.0},
        {OrderKind::UnknownSecond, 0.0, std::nullopt, -1.0},
    };
    const double g = std::tgamma(1.0 + nu1);
    m.gbar = PowerSeries({{0.5 * g, 0.0}, {-rho2 * g / std::tgamma(1.0 + nu1 - nu2), nu1 - nu2}});
    m.psi0 = 0.1;
    return m;
}

DirectConfig example1_direct(double nu, int nx, int nt) {
    const Problem p = example1_truth(nu, false);
    DirectConfig c;
    c.nx = nx;
    c.nt = nt;
    c.horizon = 0.002;
    c.terms = {{nu, PowerSeries::constant(0.5), 1.0}, {nu / 2.0, PowerSeries::constant(0.25), -1.0}};
    c.a0 = p.model.a0;
    c.b0 = p.model.b0;
    c.kernel = p.model.kernel;
    c.forcing = p.forcing;
    c.initial = [sol = p.solution](double x) { return sol(x, 0.0); };
    return c;
}

double smooth_error(int nt) {
    constexpr double pi = std::numbers::pi;
    DirectConfig c;
    c.nx = 256;
    c.nt = nt;
    c.horizon = 1.0;
    const PowerSeries rho({{0.5, 0.0}, {0.5, 1.0}});
    c.terms = {{0.6, PowerSeries::constant(1.0), 1.0}, {0.3, rho, -1.0}};
    c.a0 = PowerSeries::constant(-1.0);
    c.b0 = PowerSeries::constant(0.5);
    c.kernel = PowerSeries::monomial(1.0, -0.4);
    const PowerSeries T({{1.0, 0.0}, {1.0, 2.0}});
    const PowerSeries time_part = caputo_series(T, 0.6) - rho * caputo_series(T, 0.3) + pi * pi * T + T -
                                  kernel_convolve(*c.kernel, (0.5 - pi * pi) * T);
    c.forcing = [time_part](double x, double t) { return std::cos(pi * x) * time_part(t); };
    c.initial = [](double x) { return std::cos(pi * x); };
    const DirectSolution s = solve_direct(c);
    double err = 0.0;
    for (std::size_t i = 0; i < s.x.size(); ++i)
        err = std::max(err, std::abs(s.u[static_cast<Eigen::Index>(i)] - 2.0 * std::cos(pi * s.x[i])));
    return err;
}

}  // namespace

int main() {
    // Table 1 sweeps are shared by criteria 1-3 and 5.
    const auto t_start = std::chrono::steady_clock::now();
    const auto ftn1 = sweep(false, NoiseKind::FTN);
    const double table1_seconds = seconds_since(t_start);

    {
        bool ok = table1_seconds <= 300.0;
        double worst = 0.0;
        for (std::size_t i = 0; i < kNus.size(); ++i) {
            const double err = std::abs(ftn1[i].nu1 - kTable1Nu1[i]);
            worst = std::max(worst, err);
            ok = ok && err <= 2e-3;
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, "Table 1 FTN lead order, max |nu1_bar - reference| = %.4f (tol 0.002), %.2f s", worst,
                      table1_seconds);
        report(1, ok, buf);
        for (std::size_t i = 0; i < kNus.size(); ++i)
            detail("nu=%.1f nu1_bar=%.4f reference=%.4f err=%.4f", kNus[i], ftn1[i].nu1, kTable1Nu1[i],
                   std::abs(ftn1[i].nu1 - kTable1Nu1[i]));
    }

    {
        bool ok = true;
        for (std::size_t i = 0; i < kNus.size(); ++i) {
            const double tol = kNus[i] <= 0.5 ? 0.02 : 0.10;
            ok = ok && std::abs(ftn1[i].nu_second - kNus[i] / 2.0) <= tol;
        }
        report(2, ok, "Table 1 FTN second order, |nu2_hat - nu/2| <= 0.02 (nu <= 0.5) / 0.10 (nu >= 0.6)");
        for (std::size_t i = 0; i < kNus.size(); ++i)
            detail("nu=%.1f nu2_hat=%.4f err=%.4f tol=%.2f", kNus[i], ftn1[i].nu_second,
                   std::abs(ftn1[i].nu_second - kNus[i] / 2.0), kNus[i] <= 0.5 ? 0.02 : 0.10);
    }

    {
        bool ok = true;
        for (const auto& e : ftn1) ok = ok && e.rho && *e.rho >= 0.23 && *e.rho <= 0.29;
        report(3, ok, "Table 1 FTN coefficient, rho2_hat in [0.23, 0.29]");
        for (std::size_t i = 0; i < kNus.size(); ++i)
            detail("nu=%.1f rho2_hat=%.4f", kNus[i], ftn1[i].rho ? *ftn1[i].rho : std::nan(""));
    }

    {
        const auto ftn2 = sweep(true, NoiseKind::FTN);
        bool ok = true;
        for (std::size_t i = 0; i < kNus.size(); ++i) {
            const double tol = kNus[i] <= 0.5 ? 0.01 : 0.08;
            ok = ok && std::abs(ftn2[i].nu1 - kTable2Nu1[i]) <= 2e-3 &&
                 std::abs(ftn2[i].nu_second - kNus[i] / 3.0) <= tol;
        }
        report(4, ok, "Table 2 FTN, |nu1_bar - reference| <= 0.002 and |nu3_hat - nu/3| <= 0.01 (nu <= 0.5) / 0.08");
        for (std::size_t i = 0; i < kNus.size(); ++i)
            detail("nu=%.1f nu1_bar=%.4f (ref %.4f)  nu3_hat=%.4f err=%.4f", kNus[i], ftn2[i].nu1, kTable2Nu1[i],
                   ftn2[i].nu_second, std::abs(ftn2[i].nu_second - kNus[i] / 3.0));
    }

    {
        const auto stn = sweep(false, NoiseKind::STN);
        const auto ttn = sweep(false, NoiseKind::TTN);
        bool ok = true;
        for (std::size_t i = 0; i < 5; ++i) ok = ok && std::abs(stn[i].nu1 - kNus[i]) <= 0.01;
        for (std::size_t i = 0; i < 3; ++i) ok = ok && std::abs(ttn[i].nu1 - kNus[i]) > std::abs(ftn1[i].nu1 - kNus[i]);
        report(5, ok, "noise types, STN |nu1_bar - nu| <= 0.01 for nu <= 0.5; TTN error > FTN error for nu <= 0.3");
        for (std::size_t i = 0; i < 5; ++i)
            detail("nu=%.1f FTN err=%.4f STN err=%.4f TTN err=%.4f", kNus[i], std::abs(ftn1[i].nu1 - kNus[i]),
                   std::abs(stn[i].nu1 - kNus[i]), std::abs(ttn[i].nu1 - kNus[i]));
    }

    {
        const auto t0 = std::chrono::steady_clock::now();
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        bool prop = true;
        bool semi = true;
        for (int trial = 0; trial < 500; ++trial) {
            const double g = 0.1 + 1.9 * u01(rng);
            double m1 = 0.02 + 0.96 * u01(rng);
            double m2 = 0.01 + 0.98 * u01(rng);
            if (m2 > m1) std::swap(m1, m2);
            if (m1 - m2 > 1e-3) {
                const PowerSeries s = PowerSeries::monomial(1.0, g);
                const PowerSeries lhs = caputo_series(s, m2);
                const PowerSeries rhs = rl_convolve(m1 - m2, caputo_series(s, m1));
                prop = prop && lhs.size() == rhs.size() && relative_close(rhs.terms()[0].coef, lhs.terms()[0].coef, 1e-12) &&
                       std::abs(rhs.terms()[0].exponent - lhs.terms()[0].exponent) <= 1e-12;
            }
            const double a = 0.01 + 0.48 * u01(rng);
            const double b = 0.01 + 0.48 * u01(rng);
            std::vector<Term> terms;
            for (int k = 0; k < 4; ++k) terms.push_back({4.0 * u01(rng) - 2.0, -0.9 + 2.5 * u01(rng)});
            const PowerSeries s(terms);
            const PowerSeries x = rl_convolve(a, rl_convolve(b, s));
            const PowerSeries y = rl_convolve(a + b, s);
            semi = semi && x.size() == y.size();
            for (std::size_t k = 0; semi && k < x.size(); ++k)
                semi = relative_close(x.terms()[k].coef, y.terms()[k].coef, 1e-12) &&
                       std::abs(x.terms()[k].exponent - y.terms()[k].exponent) <= 1e-12;
        }
        double volterra = 0.0;
        for (double theta : {0.2, 0.5, 0.8})
            for (int n = 1; n <= 5; ++n)
                for (double t : {0.0, 0.1, 0.25, 0.5, 0.75, 1.0}) {
                    auto s = [=](double x) { return mittag_leffler(theta, 1.0, -n * std::pow(x, theta)); };
                    double lhs = s(t);
                    if (t > 0.0) {
                        auto w = [=](double x) { return std::pow(x, theta - 1.0) / std::tgamma(theta); };
                        lhs += n * oracle::convolve(w, s, t);
                    }
                    volterra = std::max(volterra, std::abs(lhs - 1.0));
                }
        const double secs = seconds_since(t0);
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "oracle suite, order reduction %s, semigroup %s (1e-12 termwise), Volterra max defect %.2e "
                      "(tol 1e-8), %.2f s",
                      prop ? "ok" : "violated", semi ? "ok" : "violated", volterra, secs);
        report(6, prop && semi && volterra <= 1e-8 && secs <= 10.0, buf);
    }

    {
        bool ok = true;
        const double nu2 = 0.15;
        const double rho2 = 0.3;
        for (double nu1 : {1.0 / 3.0, 2.0 / 3.0}) {
            const ModelSpec m = pure_power_model(nu1, nu2, rho2);
            const Observation obs =
                sample_observation(PowerSeries({{0.1, 0.0}, {1.0, nu1}}), uniform_times(), NoiseSpec{});
            const Estimate e = identify_pipeline(obs, m, ReconConfig{});
            const double e1 = std::abs(e.nu1 - nu1);
            const double e2 = std::abs(e.nu_second - nu2);
            const double e3 = e.rho ? std::abs(*e.rho - rho2) : std::nan("");
            ok = ok && e1 <= 1e-6 && e2 <= 1e-3 && e3 <= 1e-3;
            detail("nu1=%.4f: |nu1_bar - nu1|=%.2e  |nu2_hat - nu2|=%.2e (strategy 1: %.2e)  |rho - rho2|=%.2e", nu1, e1, e2,
                   std::abs(e.nu2_bar - nu2), e3);
        }
        std::printf("AC7 %s: noiseless pure-power data, nu1 to 1e-6, nu2 and rho2 to 1e-3 (biases listed above)\n",
                    ok ? "PASS" : "FAIL");
        if (ok) ++passed;
    }

    {
        DirectConfig c;
        c.nx = 32;
        c.nt = 64;
        c.horizon = 0.5;
        c.terms = {{0.4, PowerSeries::constant(1.0), 1.0}, {0.2, PowerSeries::constant(0.3), -1.0}};
        c.kernel = PowerSeries({{1.0, 0.0}, {1.0, 1.0}});
        c.forcing = [](double, double) { return 0.0; };
        c.initial = [](double) { return 1.0; };
        const DirectSolution s = solve_direct(c);
        double constant_err = 0.0;
        for (double v : s.psi_trace.values) constant_err = std::max(constant_err, std::abs(v - 1.0));

        const std::array<int, 4> nts = {16, 32, 64, 128};
        std::array<double, 4> errs{};
        for (std::size_t i = 0; i < nts.size(); ++i) errs[i] = smooth_error(nts[i]);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < nts.size(); ++i) {
            const double x = std::log(static_cast<double>(nts[i]));
            const double y = std::log(errs[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double n = static_cast<double>(nts.size());
        const double order = -(n * sxy - sx * sy) / (n * sxx - sx * sx);

        auto trace_error = [](double nu) {
            const Problem p = example1_truth(nu);
            const DirectSolution sol = solve_direct(example1_direct(nu, 64, 512));
            double err = 0.0;
            for (std::size_t k = 0; k < sol.psi_trace.times.size(); ++k)
                err = std::max(err, std::abs(sol.psi_trace.values[k] - p.psi(sol.psi_trace.times[k])));
            return err;
        };
        const double trace = trace_error(0.5);
        char buf[220];
        std::snprintf(buf, sizeof buf,
                      "direct solver, constant defect %.1e (tol 1e-12), temporal order %.3f (min 1.0), "
                      "nu=0.5 trace error %.2e (tol 2e-3)",
                      constant_err, order, trace);
        report(8, constant_err <= 1e-12 && order >= 1.0 && trace <= 2e-3, buf);
        detail("smooth errors at Nt=16,32,64,128: %.3e %.3e %.3e %.3e", errs[0], errs[1], errs[2], errs[3]);
        for (double nu : kNus) detail("trace error at Nx=64, Nt=512, nu=%.1f: %.2e", nu, trace_error(nu));
    }

    std::printf("acceptance complete: 8 criteria evaluated, %d passed\n", passed);
    return 0;
}
