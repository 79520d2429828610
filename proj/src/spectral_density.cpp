#include "nmsse/spectral_density.hpp"

#include <algorithm>
#include <cmath>

#include "nmsse/types.hpp"

namespace nmsse {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

SpectralDensity SpectralDensity::discrete(std::vector<DiscreteMode> modes) {
    require(!modes.empty(), "discrete spectral density needs at least one mode");
    for (const auto& m : modes) {
        require(m.frequency > 0.0, "discrete mode frequency must be positive");
        require(std::isfinite(m.coupling), "discrete mode coupling must be finite");
    }
    SpectralDensity sd;
    sd.kind = Kind::Discrete;
    sd.modes = std::move(modes);
    return sd;
}

SpectralDensity SpectralDensity::ohmic_exp(double alpha, double omega_c) {
    require(alpha >= 0.0, "ohmic coupling must be non-negative");
    require(omega_c > 0.0, "cutoff frequency must be positive");
    SpectralDensity sd;
    sd.kind = Kind::OhmicExp;
    sd.alpha = alpha;
    sd.omega_c = omega_c;
    return sd;
}

SpectralDensity SpectralDensity::ohmic_alg(double alpha, double omega_c) {
    require(alpha >= 0.0, "Kondo parameter must be non-negative");
    require(omega_c > 0.0, "cutoff frequency must be positive");
    SpectralDensity sd;
    sd.kind = Kind::OhmicAlg;
    sd.alpha = alpha;
    sd.omega_c = omega_c;
    return sd;
}

SpectralDensity SpectralDensity::brownian(double lambda, double omega0, double zeta) {
    require(lambda >= 0.0, "reorganization energy must be non-negative");
    require(omega0 > 0.0, "Brownian mode frequency must be positive");
    require(zeta > 0.0, "Brownian damping must be positive");
    SpectralDensity sd;
    sd.kind = Kind::Brownian;
    sd.lambda = lambda;
    sd.omega0 = omega0;
    sd.zeta = zeta;
    return sd;
}

double sd_eval(const SpectralDensity& sd, double omega) {
    if (omega < 0.0) throw std::invalid_argument("sd_eval requires omega >= 0");
    switch (sd.kind) {
        case SpectralDensity::Kind::Discrete:
            throw std::invalid_argument("pointwise evaluation undefined for discrete SD");
        case SpectralDensity::Kind::OhmicExp:
            return sd.alpha * omega * std::exp(-omega / sd.omega_c);
        case SpectralDensity::Kind::OhmicAlg: {
            const double r = omega / sd.omega_c;
            const double den = 1.0 + r * r;
            return 2.0 * kPi * sd.alpha * omega / (den * den);
        }
        case SpectralDensity::Kind::Brownian: {
            const double w2 = omega * omega;
            const double d = w2 - sd.omega0 * sd.omega0;
            return 2.0 * sd.lambda * sd.zeta * sd.omega0 * sd.omega0 * omega /
                   (d * d + sd.zeta * sd.zeta * w2);
        }
    }
    throw std::logic_error("unreachable");
}

double sd_peak(const SpectralDensity& sd) {
    switch (sd.kind) {
        case SpectralDensity::Kind::Discrete:
            throw std::invalid_argument("sd_peak undefined for discrete SD");
        case SpectralDensity::Kind::OhmicExp:
            return sd_eval(sd, sd.omega_c);  // maximum of x exp(-x/wc) at x = wc
        case SpectralDensity::Kind::OhmicAlg:
            // maximum of x/(1+(x/wc)^2)^2 at x = wc/sqrt(3)
            return sd_eval(sd, sd.omega_c / std::sqrt(3.0));
        case SpectralDensity::Kind::Brownian: {
            // single-peaked; locate by coarse scan + golden refinement
            const double hi = 4.0 * (sd.omega0 + sd.zeta);
            double best_w = sd.omega0, best = 0.0;
            for (int i = 1; i <= 400; ++i) {
                const double w = hi * i / 400.0;
                const double v = sd_eval(sd, w);
                if (v > best) {
                    best = v;
                    best_w = w;
                }
            }
            double a = std::max(1e-12, best_w - hi / 400.0), b = best_w + hi / 400.0;
            const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
            double c = b - gr * (b - a), d = a + gr * (b - a);
            for (int it = 0; it < 80; ++it) {
                if (sd_eval(sd, c) > sd_eval(sd, d))
                    b = d;
                else
                    a = c;
                c = b - gr * (b - a);
                d = a + gr * (b - a);
            }
            return sd_eval(sd, 0.5 * (a + b));
        }
    }
    throw std::logic_error("unreachable");
}

double sd_decay_cutoff(const SpectralDensity& sd, double rel_threshold) {
    if (sd.kind == SpectralDensity::Kind::Discrete) {
        double wmax = 0.0;
        for (const auto& m : sd.modes) wmax = std::max(wmax, m.frequency);
        return wmax;
    }
    const double thr = rel_threshold * sd_peak(sd);
    double lo = sd_characteristic_frequency(sd);
    double hi = 2.0 * lo;
    while (sd_eval(sd, hi) >= thr) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) return hi;  // pathological; caller caps anyway
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sd_eval(sd, mid) >= thr)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

double sd_characteristic_frequency(const SpectralDensity& sd) {
    switch (sd.kind) {
        case SpectralDensity::Kind::Discrete: {
            double wmax = 0.0;
            for (const auto& m : sd.modes) wmax = std::max(wmax, m.frequency);
            return wmax;
        }
        case SpectralDensity::Kind::OhmicExp:
        case SpectralDensity::Kind::OhmicAlg:
            return sd.omega_c;
        case SpectralDensity::Kind::Brownian:
            return sd.omega0;
    }
    throw std::logic_error("unreachable");
}

}  // namespace nmsse
