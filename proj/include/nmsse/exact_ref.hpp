// exact_ref.hpp — independent references: closed-system Rabi formulas and
// exact diagonalization of the single-discrete-mode problem

#pragma once

#include <vector>

#include "nmsse/models.hpp"
#include "nmsse/types.hpp"

namespace nmsse {

struct EDConfig {
    SystemModel model;
    double coupling{0.0};   // c of the discrete mode
    double frequency{1.0};  // omega of the discrete mode
    double beta{1.0};
    int n_boson{20};        // boson levels kept
    double dt{0.01};
    double t_final{10.0};
    int output_stride{1};
    double tail_tol{1e-8};  // truncated thermal mass allowed above the kept levels
};

struct EDResult {
    std::vector<double> times;
    RealMatrix populations;  // n_out x d
    RealVector trace;
};

// Diagonalizes H = H_S ⊗ I + I ⊗ w b†b + f ⊗ (c/sqrt(2w)) (b + b†) once and
// rotates the factorized thermal initial state through exact phases. Refuses
// when the truncated thermal mass e^{-beta w n_boson} exceeds tail_tol.
EDResult exact_discrete(const EDConfig& cfg);

// Closed two-level population of the initial state under H alone.
double rabi_population(const SystemModel& model, double t);

}  // namespace nmsse
