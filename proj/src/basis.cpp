#include "nmsse/basis.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace nmsse {

namespace {

constexpr double kCriticalTol = 1e-6;  // |zeta - 2 w0| < tol * w0 switches to the t e^-t limits

bool brownian_is_critical(double omega0, double zeta) {
    return std::abs(zeta - 2.0 * omega0) < kCriticalTol * omega0;
}

// (phi_p, phi_q) and derivatives across damping regimes
void brownian_pq(double w0, double zeta, double t, double& p, double& q, double& dp, double& dq) {
    const double disc = w0 * w0 - 0.25 * zeta * zeta;
    const double decay = std::exp(-0.5 * zeta * t);
    if (brownian_is_critical(w0, zeta)) {
        p = -w0 * t * decay;
        q = (1.0 + 0.5 * zeta * t) * decay;
        dp = -w0 * (1.0 - 0.5 * zeta * t) * decay;
        dq = -w0 * w0 * t * decay;
        return;
    }
    if (disc > 0.0) {
        const double w1 = std::sqrt(disc);
        const double s = std::sin(w1 * t), c = std::cos(w1 * t);
        p = -(w0 / w1) * s * decay;
        q = (0.5 * zeta / w1 * s + c) * decay;
        dp = (-w0 * c + 0.5 * zeta * w0 / w1 * s) * decay;
        dq = -(w0 * w0 / w1) * s * decay;
        return;
    }
    const double k = std::sqrt(-disc);
    const double s = std::sinh(k * t), c = std::cosh(k * t);
    p = -(w0 / k) * s * decay;
    q = (0.5 * zeta / k * s + c) * decay;
    dp = (-w0 * c + 0.5 * zeta * w0 / k * s) * decay;
    dq = -(w0 * w0 / k) * s * decay;
}

}  // namespace

ComplexVector BasisSet::phi(double t) const {
    ComplexVector out(size);
    switch (family) {
        case BasisFamily::SinCos:
            for (int m = 0; m < size / 2; ++m) {
                const double w = pairs[m].first;
                out(2 * m) = std::sin(w * t);
                out(2 * m + 1) = std::cos(w * t);
            }
            break;
        case BasisFamily::DampedSinCos:
            for (int m = 0; m < size / 2; ++m) {
                const auto [W, G] = pairs[m];
                const double decay = std::exp(-G * t);
                out(2 * m) = decay * std::sin(W * t);
                out(2 * m + 1) = decay * std::cos(W * t);
            }
            break;
        case BasisFamily::PolyExp: {
            const double decay = std::exp(-omega_c * t);
            out(0) = t * decay;
            out(1) = decay;
            break;
        }
        case BasisFamily::BrownianCritical: {
            double p, q, dp, dq;
            brownian_pq(omega0, zeta, t, p, q, dp, dq);
            out(0) = p;
            out(1) = q;
            break;
        }
        case BasisFamily::Exponential:
            for (int k = 0; k < size; ++k) out(k) = std::exp(-nu(k) * t);
            break;
    }
    return out;
}

ComplexVector BasisSet::dphi(double t) const {
    ComplexVector out(size);
    switch (family) {
        case BasisFamily::SinCos:
            for (int m = 0; m < size / 2; ++m) {
                const double w = pairs[m].first;
                out(2 * m) = w * std::cos(w * t);
                out(2 * m + 1) = -w * std::sin(w * t);
            }
            break;
        case BasisFamily::DampedSinCos:
            for (int m = 0; m < size / 2; ++m) {
                const auto [W, G] = pairs[m];
                const double decay = std::exp(-G * t);
                const double s = std::sin(W * t), c = std::cos(W * t);
                out(2 * m) = decay * (W * c - G * s);
                out(2 * m + 1) = decay * (-W * s - G * c);
            }
            break;
        case BasisFamily::PolyExp: {
            const double decay = std::exp(-omega_c * t);
            out(0) = (1.0 - omega_c * t) * decay;
            out(1) = -omega_c * decay;
            break;
        }
        case BasisFamily::BrownianCritical: {
            double p, q, dp, dq;
            brownian_pq(omega0, zeta, t, p, q, dp, dq);
            out(0) = dp;
            out(1) = dq;
            break;
        }
        case BasisFamily::Exponential:
            for (int k = 0; k < size; ++k) out(k) = -nu(k) * std::exp(-nu(k) * t);
            break;
    }
    return out;
}

BasisSet build_basis(const BathSpec& bath, BasisChoice choice) {
    if (bath.scheme != AbcfScheme::KeZhao)
        throw std::invalid_argument("basis construction requires the KeZhao splitting");

    BasisSet b;
    const auto& sd = bath.sd;

    if (choice == BasisChoice::ForceExponential) {
        b.family = BasisFamily::Exponential;
        switch (sd.kind) {
            case SpectralDensity::Kind::Discrete: {
                const int n = static_cast<int>(sd.modes.size());
                b.size = 2 * n;
                b.nu.resize(b.size);
                b.d.resize(b.size);
                for (int m = 0; m < n; ++m) {
                    const double w = sd.modes[m].frequency;
                    const double c2 = sd.modes[m].coupling * sd.modes[m].coupling;
                    b.nu(2 * m) = Complex{0.0, -w};  // e^{+i w t}
                    b.nu(2 * m + 1) = Complex{0.0, w};
                    b.d(2 * m) = Complex{-c2 / (4.0 * w), 0.0};
                    b.d(2 * m + 1) = Complex{c2 / (4.0 * w), 0.0};
                }
                break;
            }
            case SpectralDensity::Kind::OhmicExp: {
                const auto mt = meier_tannor_ohmic_exp(sd.alpha, sd.omega_c);
                const int n = static_cast<int>(mt.modes.size());
                b.size = 2 * n;
                b.nu.resize(b.size);
                b.d.resize(b.size);
                for (int m = 0; m < n; ++m) {
                    const auto& mode = mt.modes[m];
                    const double amp = mode.p / (8.0 * mode.Omega * mode.Gamma);
                    b.nu(2 * m) = Complex{mode.Gamma, mode.Omega};
                    b.nu(2 * m + 1) = Complex{mode.Gamma, -mode.Omega};
                    b.d(2 * m) = Complex{amp, 0.0};
                    b.d(2 * m + 1) = Complex{-amp, 0.0};
                }
                break;
            }
            case SpectralDensity::Kind::OhmicAlg:
                throw std::invalid_argument(
                    "degenerate exponential decomposition: the algebraic cutoff has a "
                    "second-order pole and admits no exact exponential basis");
            case SpectralDensity::Kind::Brownian: {
                if (brownian_is_critical(sd.omega0, sd.zeta))
                    throw std::invalid_argument(
                        "degenerate exponential decomposition at critical damping");
                const Complex w1 =
                    std::sqrt(Complex{sd.omega0 * sd.omega0 - 0.25 * sd.zeta * sd.zeta, 0.0});
                const Complex amp = sd.lambda * sd.omega0 * sd.omega0 / (2.0 * w1);
                b.size = 2;
                b.nu.resize(2);
                b.d.resize(2);
                b.nu(0) = 0.5 * sd.zeta + kI * w1;
                b.nu(1) = 0.5 * sd.zeta - kI * w1;
                b.d(0) = amp;
                b.d(1) = -amp;
                break;
            }
        }
        b.eta = ComplexMatrix::Zero(b.size, b.size);
        for (int k = 0; k < b.size; ++k) b.eta(k, k) = -b.nu(k);
        b.phi0 = ComplexVector::Ones(b.size);
        return b;
    }

    switch (sd.kind) {
        case SpectralDensity::Kind::Discrete: {
            const int n = static_cast<int>(sd.modes.size());
            b.family = BasisFamily::SinCos;
            b.size = 2 * n;
            b.eta = ComplexMatrix::Zero(b.size, b.size);
            b.phi0 = ComplexVector::Zero(b.size);
            b.d = ComplexVector::Zero(b.size);
            for (int m = 0; m < n; ++m) {
                const double w = sd.modes[m].frequency;
                const double c2 = sd.modes[m].coupling * sd.modes[m].coupling;
                b.pairs.emplace_back(w, 0.0);
                b.eta(2 * m, 2 * m + 1) = w;
                b.eta(2 * m + 1, 2 * m) = -w;
                b.phi0(2 * m + 1) = 1.0;
                b.d(2 * m) = -kI * c2 / (2.0 * w);
            }
            break;
        }
        case SpectralDensity::Kind::OhmicExp: {
            const auto mt = meier_tannor_ohmic_exp(sd.alpha, sd.omega_c);
            const int n = static_cast<int>(mt.modes.size());
            b.family = BasisFamily::DampedSinCos;
            b.size = 2 * n;
            b.eta = ComplexMatrix::Zero(b.size, b.size);
            b.phi0 = ComplexVector::Zero(b.size);
            b.d = ComplexVector::Zero(b.size);
            for (int m = 0; m < n; ++m) {
                const auto& mode = mt.modes[m];
                b.pairs.emplace_back(mode.Omega, mode.Gamma);
                b.eta(2 * m, 2 * m) = -mode.Gamma;
                b.eta(2 * m, 2 * m + 1) = mode.Omega;
                b.eta(2 * m + 1, 2 * m) = -mode.Omega;
                b.eta(2 * m + 1, 2 * m + 1) = -mode.Gamma;
                b.phi0(2 * m + 1) = 1.0;
                b.d(2 * m) = -kI * mode.p / (4.0 * mode.Omega * mode.Gamma);
            }
            break;
        }
        case SpectralDensity::Kind::OhmicAlg: {
            const double wc = sd.omega_c;
            b.family = BasisFamily::PolyExp;
            b.size = 2;
            b.omega_c = wc;
            b.eta = ComplexMatrix::Zero(2, 2);
            b.eta(0, 0) = -wc;
            b.eta(0, 1) = 1.0;
            b.eta(1, 1) = -wc;
            b.phi0 = ComplexVector::Zero(2);
            b.phi0(1) = 1.0;
            b.d = ComplexVector::Zero(2);
            b.d(0) = -kI * 0.5 * kPi * sd.alpha * wc * wc * wc;
            break;
        }
        case SpectralDensity::Kind::Brownian: {
            b.family = BasisFamily::BrownianCritical;
            b.size = 2;
            b.omega0 = sd.omega0;
            b.zeta = sd.zeta;
            b.eta = ComplexMatrix::Zero(2, 2);
            b.eta(0, 0) = -sd.zeta;
            b.eta(0, 1) = -sd.omega0;
            b.eta(1, 0) = sd.omega0;
            b.phi0 = ComplexVector::Zero(2);
            b.phi0(1) = 1.0;
            b.d = ComplexVector::Zero(2);
            b.d(0) = kI * sd.lambda * sd.omega0;
            break;
        }
    }
    return b;
}

Complex reconstruct_abcf(const BasisSet& basis, double t) {
    if (t < 0.0) throw std::invalid_argument("reconstruct_abcf requires t >= 0");
    return (basis.d.array() * basis.phi(t).array()).sum();
}

BasisResiduals validate_basis_point(const BasisSet& basis, double t) {
    constexpr double h = 1e-5;
    BasisResiduals r;
    const ComplexVector ephi = basis.eta * basis.phi(t);
    r.ode_closed = (basis.dphi(t) - ephi).cwiseAbs().maxCoeff();
    const ComplexVector fd = (basis.phi(t + h) - basis.phi(t - h)) / (2.0 * h);
    r.ode_fd = (fd - ephi).cwiseAbs().maxCoeff();
    const ComplexMatrix propagator = (basis.eta * t).exp();
    r.expm = (basis.phi(t) - propagator * basis.phi0).cwiseAbs().maxCoeff();
    return r;
}

BasisResiduals validate_basis(const BasisSet& basis, const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("validation grid must be nonempty");
    BasisResiduals worst;
    for (double t : grid) {
        const BasisResiduals r = validate_basis_point(basis, t);
        worst.ode_closed = std::max(worst.ode_closed, r.ode_closed);
        worst.ode_fd = std::max(worst.ode_fd, r.ode_fd);
        worst.expm = std::max(worst.expm, r.expm);
    }
    return worst;
}

}  // namespace nmsse
