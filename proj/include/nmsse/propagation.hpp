// propagation.hpp — fixed-step RK4 over batches of trajectory columns
//
// All trajectories of a run share the same sparse generator; only the scalar
// noise differs per column. Noise is therefore pre-evaluated on the half-step
// grid (the only times RK4 stages touch) and the integrator works on a
// dim x ncols block, columns interleaved as (forward_0, backward_0, forward_1, ...).

#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "nmsse/hierarchy.hpp"
#include "nmsse/noise.hpp"

namespace nmsse {

using StateMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Evaluates (Z+, Z-) for a batch of realizations on the uniform half-step grid
// t_m = m * half_dt, m = 0..n_half-1, as dense phase-matrix products. The
// phase matrix is cached when it fits comfortably in memory.
class NoisePathBuilder {
public:
    NoisePathBuilder(std::shared_ptr<const FrequencyGrid> grid, int n_half, double half_dt);

    // returns n_half x (2 * batch) with columns (Z+_0, Z-_0, Z+_1, ...)
    StateMatrix z_grid(const std::vector<NoiseRealization>& batch) const;

    int n_half() const { return n_half_; }
    double half_dt() const { return half_dt_; }

private:
    StateMatrix phases(int j_begin, int j_count) const;  // e^{-i w_j t_m} block

    std::shared_ptr<const FrequencyGrid> grid_;
    int n_half_;
    double half_dt_;
    StateMatrix cached_;  // empty when the full matrix would be too large
};

struct TrajectoryAbort {
    int column{-1};     // trajectory slot within the batch
    double time{0.0};
    double max_amplitude{0.0};  // largest finite amplitude when the blow-up hit
};

class BatchPropagator {
public:
    BatchPropagator(const HierarchyOperator& op, double dt, int n_steps, int output_stride);

    int n_outputs() const { return n_steps_ / stride_ + 1; }
    int n_half() const { return 2 * n_steps_ + 1; }

    // states: dim x ncols, zgrid: n_half x ncols. emit(out_idx, states) fires at
    // t = 0 and after every `stride` steps. Columns that lose finiteness are
    // zeroed (both directions of the trajectory) and reported.
    std::vector<TrajectoryAbort> run(
        StateMatrix& states, const StateMatrix& zgrid,
        const std::function<void(int, const StateMatrix&)>& emit) const;

private:
    const HierarchyOperator& op_;
    double dt_;
    int n_steps_;
    int stride_;
};

struct PropagateOptions {
    double dt{0.01};
    double t_final{10.0};
    int output_stride{1};
};

struct TrajectoryResult {
    std::vector<double> times;
    ComplexMatrix psi0_forward;   // n_out x dim_sys
    ComplexMatrix psi0_backward;  // n_out x dim_sys
    bool aborted{false};
    double abort_time{0.0};
};

// Single-trajectory convenience wrapper over the batch engine.
TrajectoryResult propagate(const SystemModel& model, const BasisSet& basis,
                           const FockSpace& space, const NoiseRealization& noise,
                           const PropagateOptions& opts, Formulation formulation);

}  // namespace nmsse
