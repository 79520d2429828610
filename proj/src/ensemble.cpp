#include "nmsse/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "nmsse/propagation.hpp"

namespace nmsse {

namespace {

struct SimBatch {
    int first_traj;   // global index
    int count;
    int stat_batch;
};

struct SimBatchPartial {
    std::vector<ComplexMatrix> rho_sum;  // per output time, d x d
    int used{0};
    std::vector<std::pair<int, double>> aborts;  // (global traj, time)
};

}  // namespace

EnsembleResult run_ensemble(const SystemModel& model, const BathSpec& bath,
                            const BasisSet& basis, const FockSpace& space,
                            const EnsembleSettings& settings) {
    if (settings.n_traj < 1) throw std::invalid_argument("need at least one trajectory");
    if (bath.scheme == AbcfScheme::SongShi)
        throw std::invalid_argument("noise sampling for the SongShi splitting is not provided");

    const double steps_exact = settings.t_final / settings.dt;
    const int n_steps = static_cast<int>(std::lround(steps_exact));
    if (std::abs(steps_exact - n_steps) > 1e-9)
        throw std::invalid_argument("t_final must be an integer multiple of dt");

    const HierarchyOperator op(model, basis, space, settings.formulation);
    const BatchPropagator prop(op, settings.dt, n_steps, settings.output_stride);
    const int n_out = prop.n_outputs();
    const int d = model.dim();

    const double omega_max = settings.noise_omega_max > 0.0 ? settings.noise_omega_max
                                                            : default_omega_max(bath.sd);
    auto grid = std::make_shared<const FrequencyGrid>(
        discretize(bath.sd, settings.noise_modes, omega_max));
    const NoisePathBuilder noise_builder(grid, prop.n_half(), 0.5 * settings.dt);
    const ComplexVector init = op.initial_state(model);

    // statistics batches (~sqrt(N) of near-equal size), split into sim batches
    const int n_stat = std::max(1, static_cast<int>(std::floor(std::sqrt(settings.n_traj))));
    const int base = settings.n_traj / n_stat;
    const int rem = settings.n_traj % n_stat;
    std::vector<SimBatch> sim_batches;
    int cursor = 0;
    for (int b = 0; b < n_stat; ++b) {
        const int size = base + (b < rem ? 1 : 0);
        int done = 0;
        while (done < size) {
            const int chunk = std::min(settings.sim_batch, size - done);
            sim_batches.push_back({cursor + done, chunk, b});
            done += chunk;
        }
        cursor += size;
    }

    std::vector<SimBatchPartial> partials(sim_batches.size());
    std::atomic<size_t> next{0};

    auto worker = [&]() {
        StateMatrix psi0_snap;
        while (true) {
            const size_t idx = next.fetch_add(1);
            if (idx >= sim_batches.size()) break;
            const SimBatch& sb = sim_batches[idx];

            std::vector<NoiseRealization> noises;
            noises.reserve(sb.count);
            for (int i = 0; i < sb.count; ++i) {
                RngStream stream(settings.master_seed,
                                 static_cast<std::uint64_t>(sb.first_traj + i));
                noises.push_back(bath.scheme == AbcfScheme::DiosiStrunz
                                     ? sample_diosi_strunz(grid, bath.beta, stream)
                                     : sample(grid, bath.beta, stream));
            }
            const StateMatrix zgrid = noise_builder.z_grid(noises);

            StateMatrix states(op.dim(), 2 * sb.count);
            for (int i = 0; i < sb.count; ++i) {
                states.col(2 * i) = init;
                states.col(2 * i + 1) = init;
            }

            // snapshot the physical component at every output time, then reduce
            psi0_snap.resize(n_out * d, 2 * sb.count);
            auto emit = [&](int out_idx, const StateMatrix& y) {
                psi0_snap.middleRows(out_idx * d, d) = y.topRows(d);
            };
            const auto aborts = prop.run(states, zgrid, emit);

            std::vector<bool> ok(sb.count, true);
            SimBatchPartial& part = partials[idx];
            for (const auto& ab : aborts) {
                ok[ab.column] = false;
                part.aborts.emplace_back(sb.first_traj + ab.column, ab.time);
            }
            part.rho_sum.assign(n_out, ComplexMatrix::Zero(d, d));
            for (int out = 0; out < n_out; ++out) {
                auto& acc = part.rho_sum[out];
                for (int i = 0; i < sb.count; ++i) {
                    if (!ok[i]) continue;
                    for (int r = 0; r < d; ++r)
                        for (int c = 0; c < d; ++c)
                            acc(r, c) += psi0_snap(out * d + r, 2 * i) *
                                         std::conj(psi0_snap(out * d + c, 2 * i + 1));
                }
            }
            for (int i = 0; i < sb.count; ++i)
                if (ok[i]) ++part.used;
        }
    };

    const int n_threads = std::max(1, settings.threads);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // merge partials in trajectory-index order (sim batches are ordered)
    std::vector<std::vector<ComplexMatrix>> stat_rho(
        n_stat, std::vector<ComplexMatrix>(n_out, ComplexMatrix::Zero(d, d)));
    std::vector<int> stat_used(n_stat, 0);
    int aborted = 0;
    for (size_t i = 0; i < sim_batches.size(); ++i) {
        const int b = sim_batches[i].stat_batch;
        for (int out = 0; out < n_out; ++out) stat_rho[b][out] += partials[i].rho_sum[out];
        stat_used[b] += partials[i].used;
        aborted += static_cast<int>(partials[i].aborts.size());
    }
    const double abort_frac = static_cast<double>(aborted) / settings.n_traj;
    if (abort_frac > settings.max_abort_fraction) throw EnsembleAbortError(abort_frac);

    EnsembleResult res;
    res.n_traj = settings.n_traj;
    res.n_aborted = aborted;
    res.master_seed = settings.master_seed;
    res.hierarchy_dim = op.dim();
    res.stat_batches = n_stat;
    res.times.resize(n_out);
    res.rho.assign(n_out, ComplexMatrix::Zero(d, d));
    res.trace.resize(n_out);
    res.pop_norm.resize(n_out, d);
    res.pop_se.resize(n_out, d);
    res.trace_se.resize(n_out);
    res.herm_dev.resize(n_out);

    const int n_used = settings.n_traj - aborted;
    if (n_used < 1) throw EnsembleAbortError(1.0);

    for (int out = 0; out < n_out; ++out) {
        res.times[out] = out * settings.output_stride * settings.dt;
        ComplexMatrix total = ComplexMatrix::Zero(d, d);
        for (int b = 0; b < n_stat; ++b) total += stat_rho[b][out];
        res.rho[out] = total / static_cast<double>(n_used);
        res.trace(out) = res.rho[out].trace();
        res.herm_dev(out) = (res.rho[out] - res.rho[out].adjoint()).cwiseAbs().maxCoeff();

        const double tr_re = res.trace(out).real();
        for (int a = 0; a < d; ++a) res.pop_norm(out, a) = res.rho[out](a, a).real() / tr_re;

        // batch means over the statistics batches
        RealVector pop_mean = RealVector::Zero(d);
        RealMatrix pop_b(n_stat, d);
        RealVector tr_b(n_stat);
        for (int b = 0; b < n_stat; ++b) {
            const auto& rb = stat_rho[b][out];
            tr_b(b) = rb.trace().real() / std::max(1, stat_used[b]);
            double denom = rb.trace().real();
            if (std::abs(denom) < 1e-300) denom = 1e-300;
            for (int a = 0; a < d; ++a) pop_b(b, a) = rb(a, a).real() / denom;
        }
        for (int a = 0; a < d; ++a) pop_mean(a) = pop_b.col(a).mean();
        const double tr_mean = tr_b.mean();
        if (n_stat > 1) {
            for (int a = 0; a < d; ++a) {
                const double var = (pop_b.col(a).array() - pop_mean(a)).square().sum() /
                                   (n_stat - 1.0);
                res.pop_se(out, a) = std::sqrt(var / n_stat);
            }
            const double tr_var = (tr_b.array() - tr_mean).square().sum() / (n_stat - 1.0);
            res.trace_se(out) = std::sqrt(tr_var / n_stat);
        } else {
            res.pop_se.row(out).setZero();
            res.trace_se(out) = 0.0;
        }
    }
    return res;
}

}  // namespace nmsse
