// ensemble.hpp — trajectory averaging into the reduced density matrix

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nmsse/basis.hpp"
#include "nmsse/fock_space.hpp"
#include "nmsse/hierarchy.hpp"
#include "nmsse/models.hpp"

namespace nmsse {

struct EnsembleSettings {
    double dt{0.01};
    double t_final{10.0};
    int output_stride{10};
    int n_traj{1000};
    std::uint64_t master_seed{1};
    Formulation formulation{Formulation::ExtendedRescaled};
    int threads{1};
    int sim_batch{32};            // trajectories integrated simultaneously
    int noise_modes{3000};        // J for continuous densities
    double noise_omega_max{0.0};  // 0 picks the default cutoff
    double max_abort_fraction{0.01};
};

struct EnsembleResult {
    std::vector<double> times;
    std::vector<ComplexMatrix> rho;  // raw average E[|psi+><psi-|] per output time
    ComplexVector trace;             // tr rho series
    RealMatrix pop_norm;             // trace-normalized populations, n_out x d
    RealMatrix pop_se;               // batch-means standard errors
    RealVector trace_se;             // batch-means SE of Re tr
    RealVector herm_dev;             // max |rho - rho^dagger| per time
    int n_traj{0};
    int n_aborted{0};
    std::uint64_t master_seed{0};
    int hierarchy_dim{0};
    int stat_batches{0};
};

struct EnsembleAbortError : std::runtime_error {
    double fraction;
    explicit EnsembleAbortError(double frac)
        : std::runtime_error("more than 1% of trajectories aborted"), fraction(frac) {}
};

// Averages |psi+(t)><psi-(t)| over n_traj pairs driven by per-trajectory noise
// streams. Partial sums are merged in trajectory-index order, so the result is
// independent of the thread count.
EnsembleResult run_ensemble(const SystemModel& model, const BathSpec& bath,
                            const BasisSet& basis, const FockSpace& space,
                            const EnsembleSettings& settings);

}  // namespace nmsse
