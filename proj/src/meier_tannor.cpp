#include "nmsse/meier_tannor.hpp"

#include <cmath>
#include <stdexcept>

namespace nmsse {

namespace {

// Meier-Tannor fit coefficients for the exponential-cutoff Ohmic density,
// in units of (alpha*omega_c^4, omega_c, omega_c).
constexpr double kP[3] = {12.0677, -19.9762, 0.1834};
constexpr double kOmega[3] = {0.2378, 0.0888, 0.0482};
constexpr double kGamma[3] = {2.2593, 5.4377, 0.8099};

}  // namespace

MeierTannorParams meier_tannor_ohmic_exp(double alpha, double omega_c) {
    if (omega_c <= 0.0) throw std::invalid_argument("omega_c must be positive");
    MeierTannorParams mt;
    const double wc4 = omega_c * omega_c * omega_c * omega_c;
    for (int k = 0; k < 3; ++k) {
        mt.modes.push_back({kP[k] * alpha * wc4, kOmega[k] * omega_c, kGamma[k] * omega_c});
    }
    return mt;
}

double meier_tannor_sd(const MeierTannorParams& mt, double omega) {
    double s = 0.0;
    for (const auto& m : mt.modes) {
        const double lp = (omega + m.Omega) * (omega + m.Omega) + m.Gamma * m.Gamma;
        const double lm = (omega - m.Omega) * (omega - m.Omega) + m.Gamma * m.Gamma;
        s += m.p * omega / (lp * lm);
    }
    return s;
}

Complex meier_tannor_abcf(const MeierTannorParams& mt, double t) {
    double im = 0.0;
    for (const auto& m : mt.modes) {
        im -= m.p * std::exp(-m.Gamma * t) * std::sin(m.Omega * t) / (4.0 * m.Omega * m.Gamma);
    }
    return Complex{0.0, im};
}

}  // namespace nmsse
