// spectral_density.hpp — bath spectral density families S(omega)

#pragma once

#include <stdexcept>
#include <vector>

namespace nmsse {

struct DiscreteMode {
    double coupling;   // c_k, energy^(3/2)
    double frequency;  // omega_k > 0
};

// Tagged union over the four supported families. Continuous variants satisfy
// S(0) = 0 and S(omega) >= 0 for omega >= 0.
struct SpectralDensity {
    enum class Kind { Discrete, OhmicExp, OhmicAlg, Brownian };

    Kind kind{Kind::Discrete};
    std::vector<DiscreteMode> modes;        // Discrete
    double alpha{0.0};                      // OhmicExp coupling / OhmicAlg Kondo parameter
    double omega_c{0.0};                    // Ohmic cutoff
    double lambda{0.0};                     // Brownian reorganization energy
    double omega0{0.0};                     // Brownian mode frequency
    double zeta{0.0};                       // Brownian damping

    static SpectralDensity discrete(std::vector<DiscreteMode> modes);
    static SpectralDensity ohmic_exp(double alpha, double omega_c);
    static SpectralDensity ohmic_alg(double alpha, double omega_c);
    static SpectralDensity brownian(double lambda, double omega0, double zeta);
};

// Pointwise S(omega). The discrete variant is a sum of delta functions and
// rejects pointwise evaluation; use its mode list directly.
double sd_eval(const SpectralDensity& sd, double omega);

// Peak value of S over omega >= 0 (continuous variants only).
double sd_peak(const SpectralDensity& sd);

// Smallest omega past the peak with S(omega) < rel_threshold * peak.
double sd_decay_cutoff(const SpectralDensity& sd, double rel_threshold);

// Scale used to cap frequency grids: omega_c for Ohmic forms, omega_0 for
// Brownian, the largest mode frequency for discrete.
double sd_characteristic_frequency(const SpectralDensity& sd);

}  // namespace nmsse
