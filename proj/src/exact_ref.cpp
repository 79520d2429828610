#include "nmsse/exact_ref.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include <unsupported/Eigen/KroneckerProduct>

namespace nmsse {

EDResult exact_discrete(const EDConfig& cfg) {
    const int d = cfg.model.dim();
    const int nb = cfg.n_boson;
    if (nb < 2) throw std::invalid_argument("need at least two boson levels");

    const double tail = std::exp(-cfg.beta * cfg.frequency * nb);
    if (tail > cfg.tail_tol) {
        const int suggested =
            static_cast<int>(std::ceil(-std::log(cfg.tail_tol) / (cfg.beta * cfg.frequency))) + 1;
        throw std::invalid_argument("thermal tail " + std::to_string(tail) +
                                    " above tolerance; suggest n_boson >= " +
                                    std::to_string(suggested));
    }

    ComplexMatrix lower = ComplexMatrix::Zero(nb, nb);  // annihilation
    for (int n = 1; n < nb; ++n) lower(n - 1, n) = std::sqrt(static_cast<double>(n));
    const ComplexMatrix raise = lower.adjoint();
    ComplexMatrix number = ComplexMatrix::Zero(nb, nb);
    for (int n = 0; n < nb; ++n) number(n, n) = n;

    const ComplexMatrix id_sys = ComplexMatrix::Identity(d, d);
    const ComplexMatrix id_b = ComplexMatrix::Identity(nb, nb);
    const double g = cfg.coupling / std::sqrt(2.0 * cfg.frequency);
    const ComplexMatrix h_tot =
        Eigen::kroneckerProduct(cfg.model.h, id_b) +
        Eigen::kroneckerProduct(id_sys, cfg.frequency * number) +
        Eigen::kroneckerProduct(cfg.model.f, g * (lower + raise));

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h_tot);
    if (solver.info() != Eigen::Success) throw std::runtime_error("diagonalization failed");
    const RealVector energy = solver.eigenvalues();
    const ComplexMatrix u = solver.eigenvectors();

    // rho(0) = |psi0><psi0| ⊗ thermal, renormalized over the kept levels
    RealVector therm(nb);
    double z_b = 0.0;
    for (int n = 0; n < nb; ++n) {
        therm(n) = std::exp(-cfg.beta * cfg.frequency * n);
        z_b += therm(n);
    }
    therm /= z_b;
    ComplexMatrix rho0 = ComplexMatrix::Zero(d * nb, d * nb);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            for (int n = 0; n < nb; ++n)
                rho0(r * nb + n, c * nb + n) = cfg.model.psi0(r) * std::conj(cfg.model.psi0(c)) *
                                               therm(n);
    const ComplexMatrix rho0_eig = u.adjoint() * rho0 * u;

    const double steps_exact = cfg.t_final / cfg.dt;
    const int n_steps = static_cast<int>(std::lround(steps_exact));
    if (std::abs(steps_exact - n_steps) > 1e-9)
        throw std::invalid_argument("t_final must be an integer multiple of dt");
    if (n_steps % cfg.output_stride != 0)
        throw std::invalid_argument("output stride must divide the step count");
    const int n_out = n_steps / cfg.output_stride + 1;

    EDResult res;
    res.times.resize(n_out);
    res.populations.resize(n_out, d);
    res.trace.resize(n_out);
    ComplexVector phase(d * nb);
    for (int out = 0; out < n_out; ++out) {
        const double t = out * cfg.output_stride * cfg.dt;
        res.times[out] = t;
        for (int i = 0; i < d * nb; ++i)
            phase(i) = std::exp(Complex{0.0, -energy(i) * t});
        const ComplexVector phase_c = phase.conjugate();
        const ComplexMatrix rot = phase.asDiagonal() * rho0_eig * phase_c.asDiagonal();
        const ComplexMatrix rho_t = u * rot * u.adjoint();
        double trace = 0.0;
        for (int s = 0; s < d; ++s) {
            double pop = 0.0;
            for (int n = 0; n < nb; ++n) pop += rho_t(s * nb + n, s * nb + n).real();
            res.populations(out, s) = pop;
            trace += pop;
        }
        res.trace(out) = trace;
    }
    return res;
}

double rabi_population(const SystemModel& model, double t) {
    if (model.dim() != 2) throw std::invalid_argument("rabi formula is for two-level systems");
    const double delta = 0.5 * (model.h(0, 0).real() - model.h(1, 1).real());
    const double j = std::abs(model.h(0, 1));
    const double omega2 = j * j + delta * delta;
    if (omega2 == 0.0) return 1.0;
    const double omega = std::sqrt(omega2);
    const double s = std::sin(omega * t);
    return 1.0 - (j * j / omega2) * s * s;
}

}  // namespace nmsse
