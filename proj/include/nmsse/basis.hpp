// basis.hpp — general basis sets {phi_k} closing the correlation kernel under
// d/dt Phi = eta * Phi, with expansion weights d_k

#pragma once

#include <vector>

#include "nmsse/bath.hpp"
#include "nmsse/meier_tannor.hpp"
#include "nmsse/types.hpp"

namespace nmsse {

enum class BasisFamily {
    SinCos,            // discrete modes: {sin wt, cos wt} per mode
    DampedSinCos,      // Meier-Tannor: {e^-Gt sin Wt, e^-Gt cos Wt} per mode
    PolyExp,           // algebraic cutoff: {t e^-wt, e^-wt}
    BrownianCritical,  // damped-oscillator pair, regular at critical damping
    Exponential,       // e^{-nu_k t}, diagonal eta
};

enum class BasisChoice { Auto, ForceExponential };

struct BasisSet {
    BasisFamily family{BasisFamily::Exponential};
    int size{0};                    // K
    ComplexMatrix eta;              // K x K coupling matrix, units 1/time
    ComplexVector phi0;             // Phi(0)
    ComplexVector d;                // expansion coefficients of the adjusted BCF

    // family parameters for the closed-form evaluators
    std::vector<std::pair<double, double>> pairs;  // (omega, 0) or (Omega, Gamma)
    double omega_c{0.0};                           // PolyExp
    double omega0{0.0}, zeta{0.0};                 // BrownianCritical
    ComplexVector nu;                              // Exponential rates

    ComplexVector phi(double t) const;   // closed-form Phi(t)
    ComplexVector dphi(double t) const;  // closed-form Phi'(t)
};

// Constructs the basis for a bath under the KeZhao splitting. Auto picks the
// family-native non-exponential set; ForceExponential builds the
// complex-exponential decomposition where one exists and throws near the
// Brownian critical point where the coefficients diverge.
BasisSet build_basis(const BathSpec& bath, BasisChoice choice);

// sum_k d_k phi_k(t)
Complex reconstruct_abcf(const BasisSet& basis, double t);

struct BasisResiduals {
    double ode_closed{0.0};  // max |Phi' - eta Phi| with the closed-form derivative
    double ode_fd{0.0};      // same with a central difference, h = 1e-5
    double expm{0.0};        // max |Phi(t) - exp(eta t) Phi(0)|
};

BasisResiduals validate_basis_point(const BasisSet& basis, double t);
BasisResiduals validate_basis(const BasisSet& basis, const std::vector<double>& grid);

}  // namespace nmsse
