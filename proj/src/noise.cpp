#include "nmsse/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace nmsse {

FrequencyGrid discretize(const SpectralDensity& sd, int j_modes, double omega_max) {
    FrequencyGrid grid;
    if (sd.kind == SpectralDensity::Kind::Discrete) {
        const int n = static_cast<int>(sd.modes.size());
        grid.omega.resize(n);
        grid.weight.resize(n);
        for (int k = 0; k < n; ++k) {
            grid.omega(k) = sd.modes[k].frequency;
            grid.weight(k) = sd.modes[k].coupling * sd.modes[k].coupling / (2.0 * sd.modes[k].frequency);
        }
        return grid;
    }
    if (j_modes < 1) throw std::invalid_argument("need at least one grid mode");
    if (omega_max <= 0.0) throw std::invalid_argument("omega_max must be positive");
    const double dw = omega_max / j_modes;
    grid.omega.resize(j_modes);
    grid.weight.resize(j_modes);
    for (int j = 0; j < j_modes; ++j) {
        grid.omega(j) = (j + 0.5) * dw;
        grid.weight(j) = sd_eval(sd, grid.omega(j)) * dw / kPi;
    }
    return grid;
}

double default_omega_max(const SpectralDensity& sd) {
    const double cutoff = sd_decay_cutoff(sd, 1e-10);
    return std::min(cutoff, 30.0 * sd_characteristic_frequency(sd));
}

std::pair<Complex, Complex> NoiseRealization::eval(double t) const {
    Complex zp{0.0, 0.0}, zm{0.0, 0.0};
    const int n = grid->size();
    for (int j = 0; j < n; ++j) {
        const double wt = grid->omega(j) * t;
        const Complex phase{std::cos(wt), -std::sin(wt)};  // e^{-i w t}
        const Complex phase_conj = std::conj(phase);
        zp += a(j) * phase + b(j) * phase_conj;
        zm += c(j) * phase + b(j) * phase_conj;
    }
    return {zp, zm};
}

NoiseRealization sample(std::shared_ptr<const FrequencyGrid> grid, double beta, RngStream& rng) {
    if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
    NoiseRealization nr;
    nr.grid = grid;
    nr.beta = beta;
    const int n = grid->size();
    nr.a.resize(n);
    nr.b.resize(n);
    nr.c.resize(n);
    for (int j = 0; j < n; ++j) {
        const double s = grid->weight(j);
        const double bw = beta * grid->omega(j);
        // nbar underflows to 0 for large beta*w, which is the correct limit
        const double nbar = bw > 700.0 ? 0.0 : 1.0 / std::expm1(bw);
        const double u = std::sqrt(0.5 * s * (nbar + 1.0));
        const double v = nbar * std::sqrt(0.5 * s / (nbar + 1.0));
        const Complex g1 = rng.complex_normal();
        const Complex g2 = rng.complex_normal();
        nr.a(j) = u * g1 + v * std::conj(g2);
        nr.b(j) = u * (std::conj(g1) + g2);
        nr.c(j) = v * g1 + u * std::conj(g2);
    }
    return nr;
}

NoiseRealization sample_diosi_strunz(std::shared_ptr<const FrequencyGrid> grid, double beta,
                                     RngStream& rng) {
    if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
    NoiseRealization nr;
    nr.grid = grid;
    nr.beta = beta;
    const int n = grid->size();
    nr.a.resize(n);
    nr.b.resize(n);
    nr.c.resize(n);
    for (int j = 0; j < n; ++j) {
        const double s = grid->weight(j);
        const double bw = beta * grid->omega(j);
        const double nbar = bw > 700.0 ? 0.0 : 1.0 / std::expm1(bw);
        nr.a(j) = std::sqrt(s * (nbar + 1.0)) * rng.complex_normal();
        nr.b(j) = std::sqrt(s * nbar) * rng.complex_normal();
        nr.c(j) = nr.a(j);  // Z- = Z+
    }
    return nr;
}

CorrelatorEstimate empirical_correlators(const std::vector<NoiseRealization>& realizations,
                                         const std::vector<double>& times, const BathSpec& bath) {
    const int n = static_cast<int>(realizations.size());
    if (n < 1000) throw std::invalid_argument("need at least 1000 realizations");
    const int nt = static_cast<int>(times.size());

    CorrelatorEstimate est;
    est.times = times;
    est.zpzp = ComplexVector::Zero(nt);
    est.zmzm = ComplexVector::Zero(nt);
    est.zpzm = ComplexVector::Zero(nt);
    RealMatrix sq = RealMatrix::Zero(nt, 6);  // running sums of squares (re, im per product)

    for (const auto& nr : realizations) {
        const auto [zp0, zm0] = nr.eval(0.0);
        for (int i = 0; i < nt; ++i) {
            const auto [zpt, zmt] = nr.eval(times[i]);
            const Complex p1 = zpt * zp0;
            const Complex p2 = zmt * zm0;
            const Complex p3 = zpt * std::conj(zm0);
            est.zpzp(i) += p1;
            est.zmzm(i) += p2;
            est.zpzm(i) += p3;
            sq(i, 0) += p1.real() * p1.real();
            sq(i, 1) += p1.imag() * p1.imag();
            sq(i, 2) += p2.real() * p2.real();
            sq(i, 3) += p2.imag() * p2.imag();
            sq(i, 4) += p3.real() * p3.real();
            sq(i, 5) += p3.imag() * p3.imag();
        }
    }
    est.zpzp /= n;
    est.zmzm /= n;
    est.zpzm /= n;

    // jackknife SE of a sample mean reduces to the standard error formula
    auto se = [n](double sum_sq, double mean) {
        const double var = (sum_sq / n - mean * mean) * n / (n - 1.0);
        return std::sqrt(std::max(0.0, var) / n);
    };
    est.zpzp_se_re.resize(nt);
    est.zpzp_se_im.resize(nt);
    est.zmzm_se_re.resize(nt);
    est.zmzm_se_im.resize(nt);
    est.zpzm_se_re.resize(nt);
    est.zpzm_se_im.resize(nt);
    est.alpha1_target.resize(nt);
    est.alpha_star_target.resize(nt);
    for (int i = 0; i < nt; ++i) {
        est.zpzp_se_re(i) = se(sq(i, 0), est.zpzp(i).real());
        est.zpzp_se_im(i) = se(sq(i, 1), est.zpzp(i).imag());
        est.zmzm_se_re(i) = se(sq(i, 2), est.zmzm(i).real());
        est.zmzm_se_im(i) = se(sq(i, 3), est.zmzm(i).imag());
        est.zpzm_se_re(i) = se(sq(i, 4), est.zpzm(i).real());
        est.zpzm_se_im(i) = se(sq(i, 5), est.zpzm(i).imag());
        est.alpha1_target(i) = alpha1(bath, times[i]);
        est.alpha_star_target(i) = std::conj(bcf(bath, times[i]));
    }
    return est;
}

}  // namespace nmsse
