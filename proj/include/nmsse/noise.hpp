// noise.hpp — correlated complex Gaussian pair (Z+, Z-) as exact trigonometric
// sums over a frequency grid

#pragma once

#include <memory>
#include <vector>

#include "nmsse/bath.hpp"
#include "nmsse/rng.hpp"
#include "nmsse/types.hpp"

namespace nmsse {

struct FrequencyGrid {
    RealVector omega;   // mode frequencies, > 0
    RealVector weight;  // s_j: S(w_j) dw / pi, or c_k^2/(2 w_k) for discrete modes
    int size() const { return static_cast<int>(omega.size()); }
};

// Midpoint discretization w_j = (j - 1/2) omega_max / J; discrete densities
// return their exact mode list and ignore (j_modes, omega_max).
FrequencyGrid discretize(const SpectralDensity& sd, int j_modes, double omega_max);

// Default grid ceiling: frequency where S has decayed to 1e-10 of its peak,
// capped at 30x the characteristic frequency.
double default_omega_max(const SpectralDensity& sd);

// One realization of the pair:
//   Z+(t) = sum_j a_j e^{-i w_j t} + b_j e^{+i w_j t}
//   Z-(t) = sum_j c_j e^{-i w_j t} + b_j e^{+i w_j t}
// (the second coefficient of Z- equals b_j by construction).
struct NoiseRealization {
    std::shared_ptr<const FrequencyGrid> grid;
    double beta{0.0};
    ComplexVector a, b, c;

    std::pair<Complex, Complex> eval(double t) const;  // (Z+, Z-), cost O(J)
};

// KeZhao sampling: per mode, with nbar = 1/(e^{beta w} - 1),
//   u = sqrt(s (nbar+1)/2), v = nbar sqrt(s / (2 (nbar+1))), w = u,
//   a = u g1 + v conj(g2), b = w (conj(g1) + g2), c = v g1 + u conj(g2),
// which reproduces <Z+ Z+> = <Z- Z-> = alpha1 and <Z+ conj(Z-)> = conj(alpha)
// exactly over the Gaussian measure on the grid.
NoiseRealization sample(std::shared_ptr<const FrequencyGrid> grid, double beta, RngStream& rng);

// DiosiStrunz variant: a single process (Z- = Z+) with <Z Z> = 0 and
// <Z(t) conj(Z(s))> = alpha(t - s).
NoiseRealization sample_diosi_strunz(std::shared_ptr<const FrequencyGrid> grid, double beta,
                                     RngStream& rng);

struct CorrelatorEstimate {
    std::vector<double> times;
    // sample means of Z+(t)Z+(0), Z-(t)Z-(0), Z+(t)conj(Z-(0))
    ComplexVector zpzp, zmzm, zpzm;
    // standard errors, separately for real and imaginary parts
    RealVector zpzp_se_re, zpzp_se_im, zmzm_se_re, zmzm_se_im, zpzm_se_re, zpzm_se_im;
    // targets from the bath kernels
    RealVector alpha1_target;
    ComplexVector alpha_star_target;
};

// Requires >= 1000 realizations.
CorrelatorEstimate empirical_correlators(const std::vector<NoiseRealization>& realizations,
                                         const std::vector<double>& times, const BathSpec& bath);

}  // namespace nmsse
