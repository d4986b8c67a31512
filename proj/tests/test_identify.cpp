#include <cmath>

#include <gtest/gtest.h>

#include "fracid/errors.hpp"
#include "fracid/identify.hpp"
#include "fracid/problems.hpp"
#include "fracid/special.hpp"
#include "oracles.hpp"

using namespace fracid;

namespace {

FitResult exact_fit(const PowerSeries& psi) {
    FitResult f;
    f.psi = psi;
    return f;
}

// psi = psi0 + t^nu1 solves rho1 D^nu1 psi - rho2 D^nu2 psi = gbar with a0 = b0 = 0.
ModelSpec pure_power_model(double nu1, double nu2, double rho1, double rho2, bool rho_known) {
    ModelSpec m;
    m.op.type = FdoType::TypeI;
    m.op.terms = {
        {OrderKind::UnknownLead, 0.0, PowerSeries::constant(rho1), 1.0},
        {OrderKind::UnknownSecond, 0.0, std::nullopt, -1.0},
    };
    if (rho_known) m.op.terms[1].coefficient = PowerSeries::constant(rho2);
    const double g = std::tgamma(1.0 + nu1);
    m.gbar = PowerSeries({{rho1 * g, 0.0}, {-rho2 * g / std::tgamma(1.0 + nu1 - nu2), nu1 - nu2}});
    m.psi0 = 0.1;
    return m;
}

PowerSeries pure_power_psi(double nu1) { return PowerSeries({{0.1, 0.0}, {1.0, nu1}}); }

}  // namespace

TEST(Nu1Estimator, PurePowerIsExact) {
    const ModelSpec m = pure_power_model(0.3, 0.1, 1.0, 1.0, true);
    const FitResult f = exact_fit(pure_power_psi(0.3));
    for (double tb : {1e-4, 1e-2, 0.5}) EXPECT_NEAR(nu1_at(f, m, tb), 0.3, 1e-14);
}

TEST(Nu1Estimator, ExampleValueAtSmallTime) {
    const Problem p = example1_truth(0.3);
    EXPECT_NEAR(nu1_at(exact_fit(p.psi), p.model, 1e-3), 0.299961674810332757, 1e-13);
}

TEST(Nu1Estimator, TypeIILeadNormalisation) {
    const Problem p = example2_truth(0.4);
    const FitResult f = exact_fit(p.psi);
    const double tb = 1e-3;
    const double plain = std::log(std::pow(tb, 0.4)) / std::log(tb);
    EXPECT_NEAR(nu1_at(f, p.model, tb, true), plain, 1e-13);
    EXPECT_NEAR(nu1_at(f, p.model, tb, false), plain + std::log(0.5) / std::log(tb), 1e-13);
}

TEST(Nu1Estimator, DegenerateAndOutOfRange) {
    const ModelSpec m = pure_power_model(0.3, 0.1, 1.0, 1.0, true);
    EXPECT_TRUE(std::isnan(nu1_at(exact_fit(PowerSeries::constant(0.1)), m, 0.5)));
    EXPECT_THROW(nu1_at(exact_fit(pure_power_psi(0.3)), m, 1.0), DomainError);
}

TEST(AuxiliaryFunctions, ZeroModelGivesZero) {
    ModelSpec m = pure_power_model(0.3, 0.1, 1.0, 1.0, true);
    m.gbar = PowerSeries();
    EXPECT_EQ(cfun_delta(exact_fit(pure_power_psi(0.3)), m, 0.2), 0.0);
}

TEST(AuxiliaryFunctions, Example2ConstantPart) {
    const Problem p = example2_truth(0.4);
    const double t = 7e-4;
    EXPECT_NEAR(cfun_delta(exact_fit(p.psi), p.model, t), p.model.gbar(t) + 2.0 * p.psi(t), 1e-14);
}

TEST(AuxiliaryFunctions, Example1CfunMatchesQuadrature) {
    const Problem p = example1_truth(0.3);
    const double t = 1.5e-3;
    const double memory = oracle::convolve([](double s) { return 1.0 + s; },
                                           [&](double s) { return p.psi(s) / 30.0; }, t);
    const double expected = p.model.gbar(t) + 2.0 * p.psi(t) + memory;
    EXPECT_NEAR(cfun_delta(exact_fit(p.psi), p.model, t), expected, 1e-8);
}

// The exact observation satisfies the integrated equation.
TEST(AuxiliaryFunctions, ExactDataBalancesTheOperator) {
    for (double nu : {0.2, 0.5, 0.8}) {
        const Problem p = example1_truth(nu);
        const double t = 2e-3;
        auto dpsi = [&](double s) { return 1.0 / 30.0 + nu * std::pow(s, nu - 1.0); };
        const double lhs = 0.5 * oracle::caputo(dpsi, nu, t) - 0.25 * oracle::caputo(dpsi, nu / 2.0, t);
        EXPECT_NEAR(cfun_delta(exact_fit(p.psi), p.model, t), lhs, 1e-8) << nu;
    }
}

TEST(AuxiliaryFunctions, Example1TargetTerm) {
    const double nu = 0.6;
    const Problem p = example1_truth(nu);
    const AuxiliaryFunctions aux(p.psi, p.model, nu);
    const double t = 1.2e-3;
    auto dpsi = [&](double s) { return 1.0 / 30.0 + nu * std::pow(s, nu - 1.0); };
    const double d_half = oracle::caputo(dpsi, nu / 2.0, t);
    EXPECT_NEAR(aux.ftilde(t), 0.25 * d_half, 1e-8);
    EXPECT_NEAR(aux.ffun(t), 0.25 * d_half, 1e-8);

    const Problem known = example1_truth(nu, false);
    EXPECT_NEAR(ffun_delta(exact_fit(known.psi), known.model, nu, t), d_half, 1e-8);
}

TEST(AuxiliaryFunctions, Example2TargetTerm) {
    const double nu = 0.5;
    const Problem p = example2_truth(nu);
    const double t = 1.7e-3;
    auto dprod = [&](double s) {
        const double psi = 1.0 / 30.0 + std::pow(s, nu);
        const double dpsi = nu * std::pow(s, nu - 1.0);
        return 0.5 * s * psi + 0.25 * (1.0 + s * s) * dpsi;
    };
    EXPECT_NEAR(ffun_delta(exact_fit(p.psi), p.model, nu, t), oracle::caputo(dprod, nu / 3.0, t), 1e-8);
}

TEST(Nu2Estimator, PurePowerIsExactForAnyScale) {
    for (double rho2 : {0.1, 1.0, 7.0}) {
        const ModelSpec m = pure_power_model(0.6, 0.25, 0.5, rho2, true);
        const FitResult f = exact_fit(pure_power_psi(0.6));
        for (double tb : {1e-3, 0.1})
            for (double lambda : {0.25, 0.5, 0.9}) EXPECT_NEAR(nu2_at(f, m, 0.6, tb, lambda), 0.25, 1e-10);
    }
}

TEST(Nu2Estimator, ApproachesTheSecondOrderAtSmallTimes) {
    const double nu = 0.3;
    const Problem p = example1_truth(nu);
    const FitResult f = exact_fit(p.psi);
    double last = 1.0;
    for (double tb : {1e-1, 1e-2, 1e-3}) {
        const double err = std::abs(nu2_at(f, p.model, nu, tb, 0.5) - nu / 2.0);
        EXPECT_LT(err, last);
        last = err;
    }
    EXPECT_LT(last, 1e-3);
    EXPECT_THROW(nu2_at(f, p.model, nu, 1e-3, 1.0), DomainError);
}

TEST(RhoEstimator, PurePowerRecoversTheCoefficient) {
    const ModelSpec m = pure_power_model(0.7, 0.3, 0.5, 0.37, false);
    const FitResult f = exact_fit(pure_power_psi(0.7));
    for (double t0 : {1e-3, 0.3}) EXPECT_NEAR(rho_at(f, m, 0.7, 0.3, t0), 0.37, 1e-12);
}

TEST(RhoEstimator, Example1WithExactOrders) {
    const Problem p = example1_truth(0.4);
    EXPECT_NEAR(rho_at(exact_fit(p.psi), p.model, 0.4, 0.2, 2e-3), 0.25, 1e-12);
}

TEST(RhoEstimator, OrderErrors) {
    const ModelSpec m = pure_power_model(0.7, 0.3, 0.5, 0.37, false);
    const FitResult f = exact_fit(pure_power_psi(0.7));
    EXPECT_THROW(rho_at(f, m, 0.7, 0.7, 1e-3), OrderError);
    EXPECT_THROW(rho_at(f, m, 0.7, -0.1, 1e-3), OrderError);
    EXPECT_THROW(rho_at(exact_fit(PowerSeries::constant(0.1)), m, 0.7, 0.3, 1e-3), DegenerateObservationError);
    EXPECT_THROW(AuxiliaryFunctions(f.psi, m, 1.0), DomainError);
}

TEST(HatExponents, CentredAndClipped) {
    EXPECT_EQ(hat_exponents(0.3, 1, 0.05), (std::vector<double>{0.3}));
    const auto a = hat_exponents(0.3, 3, 0.05);
    ASSERT_EQ(a.size(), 3u);
    EXPECT_NEAR(a[0], 0.25, 1e-15);
    EXPECT_NEAR(a[2], 0.35, 1e-15);
    const auto b = hat_exponents(0.02, 3, 0.05);
    ASSERT_EQ(b.size(), 3u);
    EXPECT_EQ(b[0], 0.01);
    const auto c = hat_exponents(0.99, 3, 0.05);
    EXPECT_EQ(c.size(), 2u);
    EXPECT_EQ(c.back(), 0.99);
    EXPECT_THROW(hat_exponents(0.5, 0, 0.05), ConfigError);
}

TEST(Pipeline, PurePowerNoiselessStrategiesAgree) {
    const double nu1 = 0.4;
    const double nu2 = 0.15;
    const ModelSpec m = pure_power_model(nu1, nu2, 0.5, 0.3, false);
    const Observation obs = sample_observation(pure_power_psi(nu1), uniform_times(), NoiseSpec{});
    ReconConfig cfg;
    cfg.betas = {0.2, 0.4, 0.6, 0.8, 1.0};
    cfg.jacobi_count = 2;
    // The refit basis is nearly collinear; its grid must reach small penalties.
    cfg.sigma_hat = GeometricGrid{0x1p-40, 0.5, 15};
    const Estimate e = identify_pipeline(obs, m, cfg);
    EXPECT_EQ(e.status(), "ok");
    EXPECT_NEAR(e.nu1, nu1, 1e-6);
    EXPECT_NEAR(e.nu2_bar, nu2, 1e-6);
    EXPECT_NEAR(e.nu2_hat, e.nu2_bar, 1e-6);
    ASSERT_TRUE(e.rho.has_value());
    EXPECT_NEAR(*e.rho, 0.3, 1e-6);
}

TEST(Pipeline, NoiselessExample1) {
    const Problem p = example1_truth(0.3);
    const Observation obs = sample_observation(p.psi, uniform_times(), NoiseSpec{});
    const Estimate e = identify_pipeline(obs, p.model, ReconConfig{});
    EXPECT_TRUE(e.valid()) << e.status();
    EXPECT_NEAR(e.nu1, 0.3, 2e-3);
    EXPECT_NEAR(e.nu_second, 0.15, 1e-2);
    ASSERT_TRUE(e.rho.has_value());
    EXPECT_NEAR(*e.rho, 0.25, 1e-2);
}

TEST(Pipeline, Example1WithFirstTypeNoise) {
    const Problem p = example1_truth(0.2);
    NoiseSpec noise;
    noise.kind = NoiseKind::FTN;
    const Observation obs = sample_observation(p.psi, uniform_times(), noise);
    const Estimate e = identify_pipeline(obs, p.model, ReconConfig{});
    EXPECT_TRUE(e.valid()) << e.status();
    EXPECT_NEAR(e.nu1, 0.1999, 1e-4);
    EXPECT_NEAR(e.nu2_hat, 0.0990, 1e-4);
    EXPECT_NEAR(*e.rho, 0.2505, 1e-4);
    EXPECT_EQ(e.hat_betas.size(), 3u);
    EXPECT_DOUBLE_EQ(e.t0, 2e-3);
}

TEST(Pipeline, Deterministic) {
    const Problem p = example2_truth(0.3);
    NoiseSpec noise;
    noise.kind = NoiseKind::FTN;
    const Observation obs = sample_observation(p.psi, uniform_times(), noise);
    const Estimate a = identify_pipeline(obs, p.model, ReconConfig{});
    const Estimate b = identify_pipeline(obs, p.model, ReconConfig{});
    EXPECT_EQ(a.nu1, b.nu1);
    EXPECT_EQ(a.nu_second, b.nu_second);
    EXPECT_EQ(a.sigma_hat, b.sigma_hat);
}

TEST(Pipeline, FirstStrategySkipsTheRefit) {
    const Problem p = example1_truth(0.3);
    const Observation obs = sample_observation(p.psi, uniform_times(), NoiseSpec{});
    ReconConfig cfg;
    cfg.strategy = Strategy::First;
    const Estimate e = identify_pipeline(obs, p.model, cfg);
    EXPECT_EQ(e.step2_second, StageStatus::NotRun);
    EXPECT_EQ(e.nu_second, e.nu2_bar);
    EXPECT_TRUE(e.hat_betas.empty());
}

TEST(Pipeline, InputErrors) {
    const Problem p = example1_truth(0.3);
    Observation obs = sample_observation(p.psi, uniform_times(1e-4, 5), NoiseSpec{});
    EXPECT_THROW(identify_pipeline(obs, p.model, ReconConfig{}), ConfigError);
    obs = sample_observation(p.psi, uniform_times(), NoiseSpec{});
    obs.times[3] = obs.times[2];
    EXPECT_THROW(identify_pipeline(obs, p.model, ReconConfig{}), ConfigError);
    obs = sample_observation(p.psi, uniform_times(), NoiseSpec{});
    obs.values[0] += 1e-3;
    EXPECT_THROW(identify_pipeline(obs, p.model, ReconConfig{}), ConfigError);
    ReconConfig bad;
    bad.lambda = 1.5;
    EXPECT_THROW(identify_pipeline(sample_observation(p.psi, uniform_times(), NoiseSpec{}), p.model, bad), ConfigError);
}

TEST(RatioLimit, KernelConvolutionExponent) {
    const PowerSeries f({{1.0, 0.0}, {1.0, 1.0}});
    for (double g : {0.2, 0.5, 0.8}) {
        const PowerSeries k({{1.0, g - 1.0}, {1.0, g}});
        const PowerSeries G = kernel_convolve(k, f);
        const double t = 1e-4;
        const double lambda = 0.5;
        const double exponent = std::log(std::abs(G(lambda * t) / G(t))) / std::log(lambda);
        // G ~ t^g / g at small t, so the ratio exponent is the kernel order.
        EXPECT_NEAR(exponent, g, 1e-3) << g;
        auto kf = [g](double s) { return std::pow(s, g - 1.0) * (1.0 + s); };
        auto ff = [](double s) { return 1.0 + s; };
        EXPECT_NEAR(G(t), oracle::convolve(kf, ff, t), 1e-8 * std::abs(G(t)));
    }
}

TEST(Nu1Estimator, ScalingShiftVanishesAtSmallTimes) {
    const Problem p = example1_truth(0.3);
    const FitResult f = exact_fit(p.psi);
    for (double c : {0.5, 2.0}) {
        const FitResult scaled = exact_fit(c * (p.psi - PowerSeries::constant(p.model.psi0)) +
                                           PowerSeries::constant(p.model.psi0));
        for (double tb : {1e-7, 1e-8}) {
            const double shift = std::abs(nu1_at(scaled, p.model, tb) - nu1_at(f, p.model, tb));
            EXPECT_NEAR(shift, std::abs(std::log(c) / std::log(tb)), 1e-12);
            EXPECT_LE(shift, 0.05);
        }
    }
}
