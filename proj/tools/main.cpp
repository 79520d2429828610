// nmsse command-line front end: ensemble runs, diagnostics, reference curves,
// and CSV comparison.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nmsse/config.hpp"
#include "nmsse/exact_ref.hpp"
#include "nmsse/output.hpp"
#include "nmsse/propagation.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitAborts = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed_override{0};
    bool has_seed{false};
    int threads_override{0};
};

nmsse::RunConfig load_config(const CommonArgs& args) {
    nmsse::RunConfig cfg = nmsse::parse_config_file(args.config_path);
    if (args.has_seed) cfg.master_seed = args.seed_override;
    if (args.threads_override > 0) cfg.threads = args.threads_override;
    if (!args.out_dir.empty()) cfg.directory = args.out_dir;
    return cfg;
}

std::filesystem::path prepare_out_dir(const nmsse::RunConfig& cfg) {
    std::filesystem::path dir(cfg.directory);
    std::filesystem::create_directories(dir);
    return dir;
}

int cmd_run(const CommonArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    const nmsse::RunConfig cfg = load_config(args);
    const auto model = nmsse::make_model(cfg);
    const auto bath = nmsse::make_bath(cfg);
    const auto basis = nmsse::make_basis(cfg, bath);
    const auto space = nmsse::make_space(cfg, basis);
    const auto settings = nmsse::make_settings(cfg);

    const auto result = nmsse::run_ensemble(model, bath, basis, space, settings);
    const auto dir = prepare_out_dir(cfg);
    nmsse::write_populations_csv((dir / "populations.csv").string(), result);

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    nlohmann::json meta;
    meta["config_text"] = nmsse::config_to_text(cfg);
    meta["master_seed"] = result.master_seed;
    meta["n_traj"] = result.n_traj;
    meta["n_aborted"] = result.n_aborted;
    meta["wall_time_s"] = wall;
    meta["code_version"] = kVersion;
    meta["hierarchy_dim"] = result.hierarchy_dim;
    meta["stat_batches"] = result.stat_batches;
    std::ofstream mf(dir / "meta.json");
    mf << meta.dump(2) << "\n";

    std::cout << "wrote " << (dir / "populations.csv").string() << " (" << result.times.size()
              << " rows, " << result.n_traj << " trajectories, " << wall << " s)\n";
    return kExitOk;
}

int cmd_noise_check(const CommonArgs& args, int realizations, int max_times) {
    const nmsse::RunConfig cfg = load_config(args);
    const auto bath = nmsse::make_bath(cfg);

    const double omega_max =
        cfg.omega_max > 0.0 ? cfg.omega_max : nmsse::default_omega_max(bath.sd);
    auto grid = std::make_shared<const nmsse::FrequencyGrid>(
        nmsse::discretize(bath.sd, cfg.j_modes, omega_max));

    std::vector<nmsse::NoiseRealization> noises;
    noises.reserve(realizations);
    for (int i = 0; i < realizations; ++i) {
        nmsse::RngStream stream(cfg.master_seed, static_cast<std::uint64_t>(i));
        noises.push_back(bath.scheme == nmsse::AbcfScheme::DiosiStrunz
                             ? nmsse::sample_diosi_strunz(grid, bath.beta, stream)
                             : nmsse::sample(grid, bath.beta, stream));
    }

    std::vector<double> times;
    const int n_out = static_cast<int>(cfg.t_final / (cfg.dt * cfg.output_stride)) + 1;
    const int keep = std::min(n_out, max_times);
    for (int i = 0; i < keep; ++i)
        times.push_back(cfg.t_final * i / std::max(1, keep - 1));

    const auto est = nmsse::empirical_correlators(noises, times, bath);

    nmsse::CsvTable table;
    table.columns = {"t",          "zpzp_re",    "zpzp_im",    "zmzm_re",     "zmzm_im",
                     "zpzm_re",    "zpzm_im",    "zpzp_re_se", "zpzp_im_se",  "zmzm_re_se",
                     "zmzm_im_se", "zpzm_re_se", "zpzm_im_se", "alpha1",      "alphastar_re",
                     "alphastar_im"};
    table.data.resize(keep, static_cast<Eigen::Index>(table.columns.size()));
    for (int i = 0; i < keep; ++i) {
        int c = 0;
        table.data(i, c++) = times[i];
        table.data(i, c++) = est.zpzp(i).real();
        table.data(i, c++) = est.zpzp(i).imag();
        table.data(i, c++) = est.zmzm(i).real();
        table.data(i, c++) = est.zmzm(i).imag();
        table.data(i, c++) = est.zpzm(i).real();
        table.data(i, c++) = est.zpzm(i).imag();
        table.data(i, c++) = est.zpzp_se_re(i);
        table.data(i, c++) = est.zpzp_se_im(i);
        table.data(i, c++) = est.zmzm_se_re(i);
        table.data(i, c++) = est.zmzm_se_im(i);
        table.data(i, c++) = est.zpzm_se_re(i);
        table.data(i, c++) = est.zpzm_se_im(i);
        table.data(i, c++) = est.alpha1_target(i);
        table.data(i, c++) = est.alpha_star_target(i).real();
        table.data(i, c++) = est.alpha_star_target(i).imag();
    }
    const auto dir = prepare_out_dir(cfg);
    nmsse::write_csv((dir / "noise_check.csv").string(), table);
    std::cout << "wrote " << (dir / "noise_check.csv").string() << " (" << realizations
              << " realizations)\n";
    return kExitOk;
}

int cmd_basis_check(const CommonArgs& args, double perturb_eta) {
    const nmsse::RunConfig cfg = load_config(args);
    const auto bath = nmsse::make_bath(cfg);
    auto basis = nmsse::make_basis(cfg, bath);
    if (perturb_eta != 0.0) basis.eta(0, 0) += perturb_eta;

    const int n = 201;
    nmsse::CsvTable table;
    table.columns = {"t", "ode_resid", "ode_resid_fd", "expm_resid", "recon_err"};
    table.data.resize(n, 5);
    for (int i = 0; i < n; ++i) {
        const double t = cfg.t_final * i / (n - 1);
        const auto r = nmsse::validate_basis_point(basis, t);
        table.data(i, 0) = t;
        table.data(i, 1) = r.ode_closed;
        table.data(i, 2) = r.ode_fd;
        table.data(i, 3) = r.expm;
        table.data(i, 4) = std::abs(nmsse::reconstruct_abcf(basis, t) - nmsse::abcf(bath, t));
    }
    const auto dir = prepare_out_dir(cfg);
    nmsse::write_csv((dir / "basis_check.csv").string(), table);

    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        worst = std::max({worst, table.data(i, 1), table.data(i, 3)});
    std::cout << "wrote " << (dir / "basis_check.csv").string()
              << " (max closed-form/expm residual " << worst << ")\n";
    return kExitOk;
}

int cmd_oracle(const CommonArgs& args, int n_boson) {
    const nmsse::RunConfig cfg = load_config(args);
    if (cfg.sd_type != "discrete" || cfg.couplings.size() != 1)
        throw nmsse::ConfigError("oracle needs a single-mode discrete bath");
    nmsse::EDConfig ed;
    ed.model = nmsse::make_model(cfg);
    ed.coupling = cfg.couplings[0];
    ed.frequency = cfg.frequencies[0];
    ed.beta = cfg.beta;
    ed.n_boson = n_boson;
    ed.dt = cfg.dt;
    ed.t_final = cfg.t_final;
    ed.output_stride = cfg.output_stride;
    const auto res = nmsse::exact_discrete(ed);

    nmsse::CsvTable table;
    table.columns = {"t", "p1_norm", "p2_norm", "trace_re"};
    table.data.resize(static_cast<Eigen::Index>(res.times.size()), 4);
    for (size_t i = 0; i < res.times.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        table.data(r, 0) = res.times[i];
        table.data(r, 1) = res.populations(r, 0);
        table.data(r, 2) = res.populations(r, 1);
        table.data(r, 3) = res.trace(r);
    }
    const auto dir = prepare_out_dir(cfg);
    nmsse::write_csv((dir / "oracle.csv").string(), table);
    std::cout << "wrote " << (dir / "oracle.csv").string() << " (n_boson " << n_boson << ")\n";
    return kExitOk;
}

int cmd_compare(const std::string& file_a, const std::string& file_b, double abs_tol,
                double se_tol) {
    const auto a = nmsse::read_csv(file_a);
    const auto b = nmsse::read_csv(file_b);
    const auto report = nmsse::compare_tables(a, b, abs_tol, se_tol);
    for (const auto& col : report.columns) {
        std::cout << col.name << ": max_abs_dev=" << col.max_abs_dev;
        if (col.max_se_rel_dev >= 0.0) std::cout << " max_dev/SE=" << col.max_se_rel_dev;
        std::cout << (col.pass ? " PASS" : " FAIL") << "\n";
    }
    std::cout << (report.pass ? "compare: PASS" : "compare: FAIL") << "\n";
    return report.pass ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forward-backward stochastic hierarchy simulator"};
    app.require_subcommand(1);

    CommonArgs common;
    auto add_common = [&](CLI::App* sub, bool with_threads) {
        sub->add_option("--config", common.config_path, "config file")->required();
        sub->add_option("--out", common.out_dir, "output directory override");
        sub->add_option("--seed", common.seed_override, "master seed override")
            ->each([&](const std::string&) { common.has_seed = true; });
        if (with_threads)
            sub->add_option("--threads", common.threads_override, "thread count override");
    };

    auto* run = app.add_subcommand("run", "propagate an ensemble and write populations.csv");
    add_common(run, true);

    int realizations = 100000;
    int max_times = 51;
    auto* noise = app.add_subcommand("noise-check", "empirical correlators of the noise pair");
    add_common(noise, false);
    noise->add_option("--realizations", realizations, "sample count (>= 1000)");
    noise->add_option("--times", max_times, "number of probe times");

    double perturb_eta = 0.0;
    auto* basis = app.add_subcommand("basis-check", "basis ODE/reconstruction residuals");
    add_common(basis, false);
    basis->add_option("--perturb-eta", perturb_eta, "perturb eta(0,0) for sensitivity checks");

    int n_boson = 20;
    auto* oracle = app.add_subcommand("oracle", "exact reference for a single discrete mode");
    add_common(oracle, false);
    oracle->add_option("--n-boson", n_boson, "boson levels kept");

    std::string file_a, file_b;
    double abs_tol = 0.0, se_tol = 0.0;
    auto* compare = app.add_subcommand("compare", "column-wise comparison of two CSV files");
    compare->add_option("file_a", file_a)->required();
    compare->add_option("file_b", file_b)->required();
    compare->add_option("--abs-tol", abs_tol, "absolute tolerance");
    compare->add_option("--se-tol", se_tol, "multiple of the combined standard error");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(common);
        if (noise->parsed()) return cmd_noise_check(common, realizations, max_times);
        if (basis->parsed()) return cmd_basis_check(common, perturb_eta);
        if (oracle->parsed()) return cmd_oracle(common, n_boson);
        if (compare->parsed()) return cmd_compare(file_a, file_b, abs_tol, se_tol);
    } catch (const nmsse::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const nmsse::EnsembleAbortError& e) {
        std::cerr << "run failed: " << e.what() << " (" << e.fraction * 100.0 << "%)\n";
        return kExitAborts;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
