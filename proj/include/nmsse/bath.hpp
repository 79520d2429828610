// bath.hpp — bath correlation functions and their deterministic/stochastic split

#pragma once

#include "nmsse/spectral_density.hpp"
#include "nmsse/types.hpp"

namespace nmsse {

// Which part of the bath correlation function is carried deterministically by
// the hierarchy (the adjusted BCF) versus by the noise.
enum class AbcfScheme {
    KeZhao,       // alpha1 = Re[alpha]; purely imaginary adjusted BCF; Z+ != Z-
    SongShi,      // alpha1 = csch-weighted kernel; Z+ = Z-
    DiosiStrunz,  // alpha1 = 0; adjusted BCF equals the full BCF; Z+ = Z-
};

struct BathSpec {
    SpectralDensity sd;
    double beta{1.0};  // inverse temperature > 0
    AbcfScheme scheme{AbcfScheme::KeZhao};
};

// coth(x) with a series branch near zero to avoid cancellation.
double coth(double x);
// csch(x) with the analogous small-argument series.
double csch(double x);

// Full bath correlation function alpha(t):
//   integral dw S(w)/pi [coth(beta w/2) cos(wt) - i sin(wt)]
// closed sum for discrete densities, adaptive quadrature otherwise.
Complex bcf(const BathSpec& bath, double t);

// Adjusted BCF per scheme. KeZhao uses the closed forms of the four families
// (the OhmicExp family through its Meier-Tannor fit); SongShi integrates the
// tanh-weighted kernel; DiosiStrunz returns the full BCF.
Complex abcf(const BathSpec& bath, double t);

// Stochastic part of the real kernel per scheme (KeZhao: Re alpha).
double alpha1(const BathSpec& bath, double t);

// KeZhao adjusted BCF evaluated by quadrature of -i integral S(w)/pi sin(wt) dw,
// kept independent of the closed forms for cross-checks. Continuous only.
Complex abcf_quadrature(const BathSpec& bath, double t);

}  // namespace nmsse
