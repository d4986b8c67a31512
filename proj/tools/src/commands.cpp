#include "fracid_cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "fracid/directsim.hpp"
#include "fracid/errors.hpp"
#include "fracid_cli/config.hpp"
#include "fracid_cli/csv.hpp"

namespace fracid::cli {

namespace {

RunConfig resolve_config(const CommandOptions& opt) {
    return opt.config_path.empty() ? parse_config(nlohmann::json::object()) : load_config(opt.config_path);
}

void echo_config(const RunConfig& cfg, std::ostream& err) { err << "config: " << to_json(cfg).dump() << '\n'; }

// Runs `body` writing to the --out file or to stdout, and maps exceptions to exit codes.
int run_guarded(const CommandOptions& opt, std::ostream& err, const std::function<int(std::ostream&)>& body) {
    try {
        std::ostringstream buffer;
        const int code = body(buffer);
        if (opt.out_path.empty()) {
            std::cout << buffer.str();
            std::cout.flush();
        } else {
            std::ofstream out(opt.out_path);
            if (!out) throw InputError("cannot open output file '" + opt.out_path + "'");
            out << buffer.str();
            if (!out) throw InputError("failed writing '" + opt.out_path + "'");
        }
        return code;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputFailure;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kInputFailure;
    } catch (const nlohmann::json::exception& e) {
        err << "configuration error: " << e.what() << '\n';
        return kInputFailure;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericFailure;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericFailure;
    }
}

int estimate_exit_code(const Estimate& est) {
    auto failed = [](StageStatus s) { return s == StageStatus::Failed; };
    return (failed(est.step1) || failed(est.step2_first) || failed(est.step2_second) || failed(est.step3))
               ? kNumericFailure
               : kSuccess;
}

void log_estimate(const Estimate& est, std::ostream& err) {
    err << "step1: sigma_index=" << est.step1_trace.sigma_index << " tbar_index=" << est.step1_trace.tbar_index
        << " nu1=" << est.nu1 << '\n';
    err << "step2 (strategy 1): nu2_raw=" << est.nu2_bar_raw << " at tbar=" << est.tbar
        << " lambda*tbar=" << est.lambda * est.tbar << '\n';
    if (est.step2_second != StageStatus::NotRun)
        err << "step2 (strategy 2): nu2_raw=" << est.nu2_hat_raw << " sigma_index=" << est.step2_trace.sigma_index
            << " that_index=" << est.step2_trace.tbar_index << '\n';
    if (!est.message.empty()) err << "note: " << est.message << '\n';
}

double noise_shape_nu(const std::string& noise, double nu) { return noise == "none" ? 0.5 : nu; }

NoiseKind noise_kind_from_flag(const std::string& s) {
    if (s == "ftn") return NoiseKind::FTN;
    if (s == "stn") return NoiseKind::STN;
    if (s == "ttn") return NoiseKind::TTN;
    if (s == "none") return NoiseKind::None;
    throw InputError("--noise: expected ftn, stn, ttn or none");
}

std::vector<double> observation_times(const RunConfig& cfg) {
    try {
        return uniform_times(cfg.simulate.step, cfg.simulate.count);
    } catch (const ConfigError& e) {
        throw InputError(std::string("simulate.times: ") + e.what());
    }
}

}  // namespace

int cmd_reconstruct(const CommandOptions& opt, std::ostream& err) {
    return run_guarded(opt, err, [&](std::ostream& out) {
        const RunConfig cfg = resolve_config(opt);
        echo_config(cfg, err);
        if (opt.data_path.empty()) throw InputError("reconstruct: --data is required");
        const Observation obs = read_observation_csv(opt.data_path);
        const ModelSpec model = build_model(cfg);
        const Estimate est = identify_pipeline(obs, model, cfg.recon);
        if (opt.verbose) log_estimate(est, err);
        const int p = cfg.io.precision;
        write_row(out, {"nu1", "nu_second", "rho", "sigma_bar", "tbar", "sigma_hat", "that", "status"});
        const bool hat = est.step2_second != StageStatus::NotRun;
        write_row(out, {format_number(est.nu1, p), format_number(est.nu_second, p), format_number(est.rho, p),
                        format_number(est.sigma_bar, p), format_number(est.tbar, p),
                        hat ? format_number(est.sigma_hat, p) : "", hat ? format_number(est.that, p) : "",
                        est.status()});
        return estimate_exit_code(est);
    });
}

int cmd_experiment(const CommandOptions& opt, std::ostream& err) {
    return run_guarded(opt, err, [&](std::ostream& out) {
        if (opt.table != 1 && opt.table != 2) throw InputError("--table: expected 1 or 2");
        const NoiseKind kind = noise_kind_from_flag(opt.noise);
        RunConfig cfg = resolve_config(opt);
        cfg.model.example = opt.table == 1 ? "example1" : "example2";
        cfg.model.rho_unknown = true;
        echo_config(cfg, err);

        const std::vector<double> nus = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
        const auto times = observation_times(cfg);
        std::vector<Estimate> results(nus.size());
        std::vector<std::string> failures(nus.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < nus.size(); i = next++) {
                try {
                    const Problem prob = opt.table == 1 ? example1_truth(nus[i], true)
                                                        : example2_truth(nus[i], cfg.model.gamma);
                    NoiseSpec noise = cfg.noise;
                    noise.kind = kind;
                    noise.nu1_for_shape = cfg.noise_shape_explicit ? cfg.noise.nu1_for_shape
                                                                   : noise_shape_nu(opt.noise, nus[i]);
                    const Observation obs = sample_observation(prob.psi, times, noise);
                    results[i] = identify_pipeline(obs, prob.model, cfg.recon);
                } catch (const std::exception& e) {
                    failures[i] = e.what();
                }
            }
        };
        const int nthreads = std::clamp(opt.threads, 1, static_cast<int>(nus.size()));
        std::vector<std::thread> pool;
        for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();

        const int p = cfg.io.precision;
        if (opt.table == 1)
            write_row(out, {"nu1", "nu1_bar", "nu2_bar", "nu2_hat", "rho2_hat", "err_nu1_bar", "err_nu2_bar",
                            "err_nu2_hat", "err_rho2_hat", "status"});
        else
            write_row(out, {"nu1", "nu1_bar", "nu3_bar", "nu3_hat", "err_nu1_bar", "err_nu3_bar", "err_nu3_hat",
                            "status"});
        int code = kSuccess;
        for (std::size_t i = 0; i < nus.size(); ++i) {
            const double nu = nus[i];
            if (!failures[i].empty()) {
                err << "nu1=" << nu << ": " << failures[i] << '\n';
                code = kNumericFailure;
                write_row(out, {format_number(nu, p), "", "", "", "", "", "", "", "", "failed"});
                continue;
            }
            const Estimate& e = results[i];
            if (opt.verbose) {
                err << "nu1=" << nu << '\n';
                log_estimate(e, err);
            }
            const double second = opt.table == 1 ? nu / 2.0 : nu / 3.0;
            std::vector<std::string> row = {format_number(nu, p), format_number(e.nu1, p),
                                            format_number(e.nu2_bar_raw, p), format_number(e.nu2_hat_raw, p)};
            if (opt.table == 1) row.push_back(format_number(e.rho, p));
            row.push_back(format_number(std::abs(e.nu1 - nu), p));
            row.push_back(format_number(std::abs(e.nu2_bar_raw - second), p));
            row.push_back(format_number(std::abs(e.nu2_hat_raw - second), p));
            if (opt.table == 1)
                row.push_back(e.rho ? format_number(std::abs(*e.rho - 0.25), p) : std::string());
            row.push_back(e.status());
            write_row(out, row);
        }
        return code;
    });
}

int cmd_simulate(const CommandOptions& opt, std::ostream& err) {
    return run_guarded(opt, err, [&](std::ostream& out) {
        const RunConfig cfg = resolve_config(opt);
        echo_config(cfg, err);
        const auto times = observation_times(cfg);
        const NoiseSpec noise = effective_noise(cfg);
        Observation obs;
        if (cfg.simulate.source == "analytic") {
            const auto psi = truth_psi(cfg);
            if (!psi) throw InputError("simulate: analytic source needs model.psi_true for custom models");
            obs = sample_observation(*psi, times, noise);
        } else {
            if (cfg.model.example != "example1")
                throw InputError("simulate: the direct solver supports the type I example (example1) only");
            const Problem prob = builtin_problem(cfg);
            const double nu = cfg.model.nu;
            DirectConfig dc;
            dc.nx = cfg.simulate.nx;
            dc.nt = cfg.simulate.nt;
            dc.horizon = times.back();
            dc.terms = {{nu, PowerSeries::constant(0.5), 1.0}, {nu / 2.0, PowerSeries::constant(0.25), -1.0}};
            dc.a0 = prob.model.a0;
            dc.b0 = prob.model.b0;
            dc.kernel = prob.model.kernel;
            dc.forcing = prob.forcing;
            dc.initial = [sol = prob.solution](double x) { return sol(x, 0.0); };
            try {
                dc.validate();
            } catch (const ConfigError& e) {
                throw InputError(std::string("simulate: ") + e.what());
            }
            const DirectSolution sol = solve_direct(dc);
            obs = sample_observation([&sol](double t) { return sol.psi_at(t); }, sol.psi_trace.psi0, times, noise);
            if (opt.verbose) err << "direct solve: nx=" << dc.nx << " nt=" << dc.nt << " T=" << dc.horizon << '\n';
        }
        write_observation_csv(out, obs, cfg.io.precision);
        return kSuccess;
    });
}

int cmd_plotdata(const CommandOptions& opt, std::ostream& err) {
    return run_guarded(opt, err, [&](std::ostream& out) {
        const RunConfig cfg = resolve_config(opt);
        echo_config(cfg, err);
        if (opt.data_path.empty()) throw InputError("plotdata: --data is required");
        const Observation obs = read_observation_csv(opt.data_path);
        const ModelSpec model = build_model(cfg);
        const Estimate est = identify_pipeline(obs, model, cfg.recon);
        if (opt.verbose) log_estimate(est, err);
        if (est.step1 != StageStatus::Ok) throw NumericError("plotdata: lead order estimation failed");

        const PowerSeries& fit = est.fit_bar.psi;
        const AuxiliaryFunctions aux(fit, model, est.nu1);
        struct Row {
            double t;
            std::optional<double> data;
        };
        std::vector<Row> rows;
        const double tK = obs.times.back();
        const int n = cfg.io.plot_points;
        for (int i = 0; i < n; ++i) rows.push_back({tK * i / (n - 1), std::nullopt});
        for (std::size_t k = 0; k < obs.times.size(); ++k) rows.push_back({obs.times[k], obs.values[k]});
        std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.t < b.t; });
        // A grid point that coincides with an observation time is dropped in favour of the observation row.
        std::vector<Row> merged;
        for (const auto& r : rows) {
            if (!merged.empty() && merged.back().t == r.t) {
                if (r.data) merged.back() = r;
                continue;
            }
            merged.push_back(r);
        }
        rows = std::move(merged);

        const int p = cfg.io.precision;
        write_row(out, {"t", "psi_data", "psi_fit", "F_delta"});
        for (const auto& r : rows) {
            std::optional<double> f;
            if (r.t > 0.0) f = aux.ffun(r.t);
            write_row(out, {format_number(r.t, p), format_number(r.data, p), format_number(fit(r.t), p),
                            format_number(f, p)});
        }
        return kSuccess;
    });
}

}  // namespace fracid::cli
