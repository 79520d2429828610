// meier_tannor.hpp — Lorentzian-mode decomposition of the Ohmic density with
// exponential cutoff

#pragma once

#include <vector>

#include "nmsse/types.hpp"

namespace nmsse {

struct MeierTannorParams {
    struct Mode {
        double p;      // amplitude, energy^4
        double Omega;  // oscillation frequency > 0
        double Gamma;  // damping > 0
    };
    std::vector<Mode> modes;
};

// Three-mode Meier-Tannor fit of S(w) = alpha * w * exp(-w/omega_c); the
// dimensionless coefficients scale as p_k/(alpha*omega_c^4), Omega_k/omega_c,
// Gamma_k/omega_c.
MeierTannorParams meier_tannor_ohmic_exp(double alpha, double omega_c);

// Fitted density: sum_k p_k * w / ([(w+Omega_k)^2+Gamma_k^2][(w-Omega_k)^2+Gamma_k^2]).
double meier_tannor_sd(const MeierTannorParams& mt, double omega);

// Imaginary-only correlation kernel of the fitted density:
// -i * sum_k p_k exp(-Gamma_k t) sin(Omega_k t) / (4 Omega_k Gamma_k).
Complex meier_tannor_abcf(const MeierTannorParams& mt, double t);

}  // namespace nmsse
