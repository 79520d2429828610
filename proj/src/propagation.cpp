#include "nmsse/propagation.hpp"

#include <cmath>
#include <stdexcept>

namespace nmsse {

namespace {
constexpr long long kPhaseCacheLimit = 6'000'000;  // entries (~96 MB complex)
}

NoisePathBuilder::NoisePathBuilder(std::shared_ptr<const FrequencyGrid> grid, int n_half,
                                   double half_dt)
    : grid_(std::move(grid)), n_half_(n_half), half_dt_(half_dt) {
    const long long total = static_cast<long long>(n_half_) * grid_->size();
    if (total <= kPhaseCacheLimit) cached_ = phases(0, grid_->size());
}

StateMatrix NoisePathBuilder::phases(int j_begin, int j_count) const {
    StateMatrix p(n_half_, j_count);
    for (int m = 0; m < n_half_; ++m) {
        const double t = m * half_dt_;
        for (int j = 0; j < j_count; ++j) {
            const double wt = grid_->omega(j_begin + j) * t;
            p(m, j) = Complex{std::cos(wt), -std::sin(wt)};
        }
    }
    return p;
}

StateMatrix NoisePathBuilder::z_grid(const std::vector<NoiseRealization>& batch) const {
    const int nb = static_cast<int>(batch.size());
    const int j_total = grid_->size();
    ComplexMatrix coef_a(j_total, nb), coef_b(j_total, nb), coef_c(j_total, nb);
    for (int i = 0; i < nb; ++i) {
        coef_a.col(i) = batch[i].a;
        coef_b.col(i) = batch[i].b;
        coef_c.col(i) = batch[i].c;
    }

    StateMatrix zp = StateMatrix::Zero(n_half_, nb);
    StateMatrix zm = StateMatrix::Zero(n_half_, nb);
    const int chunk = cached_.size() > 0 ? j_total : std::min(j_total, 512);
    for (int j0 = 0; j0 < j_total; j0 += chunk) {
        const int jc = std::min(chunk, j_total - j0);
        const StateMatrix p = cached_.size() > 0 ? StateMatrix() : phases(j0, jc);
        const auto& pref = cached_.size() > 0 ? cached_ : p;
        // Z+ = P a + conj(P) b ;  Z- = P c + conj(P) b,
        // with conj(P) b = conj(P conj(b)) to reuse the same phase block
        const StateMatrix shared = (pref * coef_b.middleRows(j0, jc).conjugate()).conjugate();
        zp.noalias() += pref * coef_a.middleRows(j0, jc);
        zp += shared;
        zm.noalias() += pref * coef_c.middleRows(j0, jc);
        zm += shared;
    }

    StateMatrix z(n_half_, 2 * nb);
    for (int i = 0; i < nb; ++i) {
        z.col(2 * i) = zp.col(i);
        z.col(2 * i + 1) = zm.col(i);
    }
    return z;
}

BatchPropagator::BatchPropagator(const HierarchyOperator& op, double dt, int n_steps,
                                 int output_stride)
    : op_(op), dt_(dt), n_steps_(n_steps), stride_(output_stride) {
    if (dt <= 0.0) throw std::invalid_argument("dt must be positive");
    if (n_steps < 1) throw std::invalid_argument("need at least one step");
    if (output_stride < 1 || n_steps % output_stride != 0)
        throw std::invalid_argument("output stride must divide the step count");
}

std::vector<TrajectoryAbort> BatchPropagator::run(
    StateMatrix& states, const StateMatrix& zgrid,
    const std::function<void(int, const StateMatrix&)>& emit) const {
    const int dim = op_.dim();
    const int ncols = static_cast<int>(states.cols());
    if (states.rows() != dim) throw std::invalid_argument("state dimension mismatch");
    if (zgrid.rows() != n_half() || zgrid.cols() != ncols)
        throw std::invalid_argument("noise grid shape mismatch");

    const auto& drift = op_.drift();
    const auto& coupling = op_.coupling();
    StateMatrix k1(dim, ncols), k2(dim, ncols), k3(dim, ncols), k4(dim, ncols);
    StateMatrix tmp(dim, ncols), stage(dim, ncols);

    auto rhs = [&](const StateMatrix& y, int half_row, StateMatrix& out) {
        out.noalias() = drift * y;
        tmp.noalias() = coupling * y;
        out.array() += tmp.array().rowwise() * zgrid.row(half_row).array();
    };

    std::vector<TrajectoryAbort> aborts;
    emit(0, states);
    for (int step = 0; step < n_steps_; ++step) {
        const int r0 = 2 * step;
        rhs(states, r0, k1);
        stage = states + (0.5 * dt_) * k1;
        rhs(stage, r0 + 1, k2);
        stage = states + (0.5 * dt_) * k2;
        rhs(stage, r0 + 1, k3);
        stage = states + dt_ * k3;
        rhs(stage, r0 + 2, k4);
        states += (dt_ / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (!states.allFinite()) {
            for (int traj = 0; traj < ncols / 2; ++traj) {
                const bool bad = !states.col(2 * traj).allFinite() ||
                                 !states.col(2 * traj + 1).allFinite();
                if (!bad) continue;
                double max_amp = 0.0;
                for (int c = 2 * traj; c <= 2 * traj + 1; ++c)
                    for (int r = 0; r < dim; ++r) {
                        const double a = std::abs(states(r, c));
                        if (std::isfinite(a)) max_amp = std::max(max_amp, a);
                    }
                aborts.push_back({traj, (step + 1) * dt_, max_amp});
                states.col(2 * traj).setZero();
                states.col(2 * traj + 1).setZero();
            }
        }
        if ((step + 1) % stride_ == 0) emit((step + 1) / stride_, states);
    }
    return aborts;
}

TrajectoryResult propagate(const SystemModel& model, const BasisSet& basis,
                           const FockSpace& space, const NoiseRealization& noise,
                           const PropagateOptions& opts, Formulation formulation) {
    const double steps_exact = opts.t_final / opts.dt;
    const int n_steps = static_cast<int>(std::lround(steps_exact));
    if (std::abs(steps_exact - n_steps) > 1e-9)
        throw std::invalid_argument("t_final must be an integer multiple of dt");

    const HierarchyOperator op(model, basis, space, formulation);
    const BatchPropagator prop(op, opts.dt, n_steps, opts.output_stride);
    NoisePathBuilder builder(noise.grid, prop.n_half(), 0.5 * opts.dt);
    const StateMatrix zgrid = builder.z_grid({noise});

    StateMatrix states(op.dim(), 2);
    const ComplexVector init = op.initial_state(model);
    states.col(0) = init;
    states.col(1) = init;

    TrajectoryResult result;
    const int n_out = prop.n_outputs();
    const int d = model.dim();
    result.times.resize(n_out);
    result.psi0_forward.resize(n_out, d);
    result.psi0_backward.resize(n_out, d);
    auto emit = [&](int idx, const StateMatrix& y) {
        result.times[idx] = idx * opts.output_stride * opts.dt;
        for (int s = 0; s < d; ++s) {
            result.psi0_forward(idx, s) = y(s, 0);
            result.psi0_backward(idx, s) = y(s, 1);
        }
    };
    const auto aborts = prop.run(states, zgrid, emit);
    if (!aborts.empty()) {
        result.aborted = true;
        result.abort_time = aborts.front().time;
    }
    return result;
}

}  // namespace nmsse
