#include "nmsse/bath.hpp"

#include <cmath>
#include <stdexcept>

#include "nmsse/meier_tannor.hpp"
#include "nmsse/quadrature.hpp"

namespace nmsse {

namespace {

constexpr double kSeriesCut = 5e-5;  // |x| below this uses the Laurent series

bool is_discrete(const BathSpec& b) {
    return b.sd.kind == SpectralDensity::Kind::Discrete;
}

QuadratureOptions osc_options(double omega_max, double t) {
    QuadratureOptions opts;
    opts.abs_tol = 1e-13;
    opts.rel_tol = 1e-10;
    // seed roughly one panel per oscillation period
    opts.initial_intervals =
        static_cast<int>(std::min(8192.0, std::max(1.0, omega_max * std::abs(t) / (2.0 * kPi))));
    return opts;
}

double quad_upper_limit(const SpectralDensity& sd) {
    return sd_decay_cutoff(sd, 1e-10);
}

// Brownian phi_p(t): the sin-type member of the damped-oscillator pair, valid
// across underdamped/critical/overdamped regimes.
double brownian_phi_p(double omega0, double zeta, double t) {
    const double disc = omega0 * omega0 - 0.25 * zeta * zeta;
    if (std::abs(zeta - 2.0 * omega0) < 1e-6 * omega0) {
        return -omega0 * t * std::exp(-0.5 * zeta * t);
    }
    if (disc > 0.0) {
        const double w1 = std::sqrt(disc);
        return -(omega0 / w1) * std::sin(w1 * t) * std::exp(-0.5 * zeta * t);
    }
    const double k = std::sqrt(-disc);
    return -(omega0 / k) * std::sinh(k * t) * std::exp(-0.5 * zeta * t);
}

}  // namespace

double coth(double x) {
    if (std::abs(x) < kSeriesCut) return 1.0 / x + x / 3.0;
    return 1.0 / std::tanh(x);
}

double csch(double x) {
    if (std::abs(x) < kSeriesCut) return 1.0 / x - x / 6.0;
    return 1.0 / std::sinh(x);
}

Complex bcf(const BathSpec& bath, double t) {
    if (bath.beta <= 0.0) throw std::invalid_argument("beta must be positive");
    if (is_discrete(bath)) {
        Complex sum{0.0, 0.0};
        for (const auto& m : bath.sd.modes) {
            const double s = m.coupling * m.coupling / (2.0 * m.frequency);
            sum += s * Complex{coth(0.5 * bath.beta * m.frequency) * std::cos(m.frequency * t),
                               -std::sin(m.frequency * t)};
        }
        return sum;
    }
    const double wmax = quad_upper_limit(bath.sd);
    const auto opts = osc_options(wmax, t);
    const double re = integrate(
        [&](double w) {
            return sd_eval(bath.sd, w) / kPi * coth(0.5 * bath.beta * w) * std::cos(w * t);
        },
        0.0, wmax, opts);
    const double im = -integrate(
        [&](double w) { return sd_eval(bath.sd, w) / kPi * std::sin(w * t); }, 0.0, wmax, opts);
    return Complex{re, im};
}

Complex abcf(const BathSpec& bath, double t) {
    if (t < 0.0) throw std::invalid_argument("abcf requires t >= 0");
    switch (bath.scheme) {
        case AbcfScheme::KeZhao:
            break;
        case AbcfScheme::SongShi: {
            if (is_discrete(bath)) {
                Complex sum{0.0, 0.0};
                for (const auto& m : bath.sd.modes) {
                    const double s = m.coupling * m.coupling / (2.0 * m.frequency);
                    sum += s * Complex{std::tanh(0.25 * bath.beta * m.frequency) *
                                           std::cos(m.frequency * t),
                                       -std::sin(m.frequency * t)};
                }
                return sum;
            }
            const double wmax = quad_upper_limit(bath.sd);
            const auto opts = osc_options(wmax, t);
            const double re = integrate(
                [&](double w) {
                    return sd_eval(bath.sd, w) / kPi * std::tanh(0.25 * bath.beta * w) *
                           std::cos(w * t);
                },
                0.0, wmax, opts);
            const double im = -integrate(
                [&](double w) { return sd_eval(bath.sd, w) / kPi * std::sin(w * t); }, 0.0, wmax,
                opts);
            return Complex{re, im};
        }
        case AbcfScheme::DiosiStrunz:
            return bcf(bath, t);
    }

    // KeZhao: purely imaginary, family closed forms
    switch (bath.sd.kind) {
        case SpectralDensity::Kind::Discrete: {
            double im = 0.0;
            for (const auto& m : bath.sd.modes) {
                im -= m.coupling * m.coupling / (2.0 * m.frequency) * std::sin(m.frequency * t);
            }
            return Complex{0.0, im};
        }
        case SpectralDensity::Kind::OhmicExp:
            return meier_tannor_abcf(meier_tannor_ohmic_exp(bath.sd.alpha, bath.sd.omega_c), t);
        case SpectralDensity::Kind::OhmicAlg: {
            const double wc = bath.sd.omega_c;
            return Complex{0.0, -0.5 * kPi * bath.sd.alpha * wc * wc * wc * t * std::exp(-wc * t)};
        }
        case SpectralDensity::Kind::Brownian:
            return kI * bath.sd.lambda * bath.sd.omega0 *
                   brownian_phi_p(bath.sd.omega0, bath.sd.zeta, t);
    }
    throw std::logic_error("unreachable");
}

double alpha1(const BathSpec& bath, double t) {
    if (t < 0.0) throw std::invalid_argument("alpha1 requires t >= 0");
    switch (bath.scheme) {
        case AbcfScheme::DiosiStrunz:
            return 0.0;
        case AbcfScheme::SongShi: {
            if (is_discrete(bath)) {
                double sum = 0.0;
                for (const auto& m : bath.sd.modes) {
                    sum += m.coupling * m.coupling / (2.0 * m.frequency) *
                           csch(0.5 * bath.beta * m.frequency) * std::cos(m.frequency * t);
                }
                return sum;
            }
            const double wmax = quad_upper_limit(bath.sd);
            return integrate(
                [&](double w) {
                    return sd_eval(bath.sd, w) / kPi * csch(0.5 * bath.beta * w) * std::cos(w * t);
                },
                0.0, wmax, osc_options(wmax, t));
        }
        case AbcfScheme::KeZhao:
            break;
    }
    if (is_discrete(bath)) {
        double sum = 0.0;
        for (const auto& m : bath.sd.modes) {
            sum += m.coupling * m.coupling / (2.0 * m.frequency) *
                   coth(0.5 * bath.beta * m.frequency) * std::cos(m.frequency * t);
        }
        return sum;
    }
    const double wmax = quad_upper_limit(bath.sd);
    return integrate(
        [&](double w) {
            return sd_eval(bath.sd, w) / kPi * coth(0.5 * bath.beta * w) * std::cos(w * t);
        },
        0.0, wmax, osc_options(wmax, t));
}

Complex abcf_quadrature(const BathSpec& bath, double t) {
    if (is_discrete(bath))
        throw std::invalid_argument("quadrature undefined for discrete SD; use abcf");
    const double wmax = quad_upper_limit(bath.sd);
    const double im = -integrate(
        [&](double w) { return sd_eval(bath.sd, w) / kPi * std::sin(w * t); }, 0.0, wmax,
        osc_options(wmax, t));
    return Complex{0.0, im};
}

}  // namespace nmsse
