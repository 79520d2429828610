#include <doctest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "nmsse/hierarchy.hpp"

using namespace nmsse;

namespace {

BasisSet raw_basis(const ComplexMatrix& eta, const ComplexVector& phi0, const ComplexVector& d) {
    BasisSet b;
    b.family = BasisFamily::Exponential;  // evaluators unused here
    b.size = static_cast<int>(d.size());
    b.eta = eta;
    b.phi0 = phi0;
    b.d = d;
    b.nu = -eta.diagonal();
    return b;
}

SystemModel random_model(std::mt19937_64& gen) {
    std::normal_distribution<double> normal;
    ComplexMatrix h(2, 2), f(2, 2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            h(r, c) = Complex{normal(gen), normal(gen)};
            f(r, c) = Complex{normal(gen), normal(gen)};
        }
    SystemModel m;
    m.h = 0.5 * (h + h.adjoint()).eval();
    m.f = 0.5 * (f + f.adjoint()).eval();
    m.psi0 = ComplexVector::Zero(2);
    m.psi0(0) = 1.0;
    return m;
}

// dense annihilation operator on the truncated space
ComplexMatrix dense_lower(const FockSpace& fs, int mode) {
    ComplexMatrix b = ComplexMatrix::Zero(fs.size(), fs.size());
    for (int i = 0; i < fs.size(); ++i) {
        const auto& n = fs.state(i);
        if (n[mode] < 1) continue;
        const int j = fs.neighbor(i, mode, -1);
        if (j >= 0) b(j, i) = std::sqrt(static_cast<double>(n[mode]));
    }
    return b;
}

// literal ladder-operator assembly of the rescaled generator
ComplexMatrix dense_generator_rescaled(const SystemModel& m, const BasisSet& basis,
                                       const FockSpace& fs, Complex z) {
    const int nf = fs.size();
    const ComplexMatrix id_f = ComplexMatrix::Identity(nf, nf);
    const ComplexMatrix id_s = ComplexMatrix::Identity(2, 2);
    ComplexMatrix h_eff = Eigen::kroneckerProduct(id_f, m.h).eval();
    h_eff += z * Eigen::kroneckerProduct(id_f, m.f);
    for (int k = 0; k < basis.size; ++k) {
        const ComplexMatrix bk = dense_lower(fs, k);
        const ComplexMatrix bk_dag = bk.adjoint();
        h_eff += -kI * basis.phi0(k) * Eigen::kroneckerProduct(bk_dag, m.f);
        h_eff += kI * basis.d(k) * Eigen::kroneckerProduct(bk, m.f);
        for (int kp = 0; kp < basis.size; ++kp) {
            const ComplexMatrix bkp = dense_lower(fs, kp);
            h_eff += kI * basis.eta(k, kp) *
                     Eigen::kroneckerProduct((bk_dag * bkp).eval(), id_s);
        }
    }
    return (-kI * h_eff).eval();
}

// literal neighbor-sum recursion, unscaled variant
ComplexVector dense_unscaled_rhs(const SystemModel& m, const BasisSet& basis, const FockSpace& fs,
                                 Complex z, const ComplexVector& psi) {
    const int d = 2;
    ComplexVector out = ComplexVector::Zero(psi.size());
    for (int i = 0; i < fs.size(); ++i) {
        const auto& n = fs.state(i);
        Eigen::Vector2cd acc = -kI * (m.h + z * m.f) * psi.segment<2>(i * d);
        for (int k = 0; k < basis.size; ++k) {
            const int up = fs.neighbor(i, k, +1);
            if (up >= 0) acc += basis.d(k) * (m.f * psi.segment<2>(up * d));
            if (n[k] >= 1) {
                const int dn = fs.neighbor(i, k, -1);
                if (dn >= 0)
                    acc -= basis.phi0(k) * static_cast<double>(n[k]) *
                           (m.f * psi.segment<2>(dn * d));
            }
            for (int kp = 0; kp < basis.size; ++kp) {
                if (n[k] < 1) continue;
                const int src = fs.shift(i, k, kp);
                if (src >= 0 && basis.eta(k, kp) != Complex{0.0, 0.0})
                    acc += basis.eta(k, kp) * static_cast<double>(n[k]) * psi.segment<2>(src * d);
            }
        }
        out.segment<2>(i * d) = acc;
    }
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("hierarchy");

TEST_CASE("diagonal decay of a deep occupation") {
    // one exponential mode nu = 0.5 + i, amplitude parked at n = 3, H = f = 0:
    // the generator reduces to -3 nu
    SystemModel m;
    m.h = ComplexMatrix::Zero(2, 2);
    m.f = ComplexMatrix::Zero(2, 2);
    m.psi0 = ComplexVector::Zero(2);
    m.psi0(0) = 1.0;
    const Complex nu{0.5, 1.0};
    ComplexMatrix eta(1, 1);
    eta(0, 0) = -nu;
    const auto basis = raw_basis(eta, ComplexVector::Ones(1), ComplexVector::Ones(1));
    const auto fs = FockSpace::hypercube({5});
    const HierarchyOperator op(m, basis, fs, Formulation::ExtendedRescaled);

    ComplexVector psi = ComplexVector::Zero(op.dim());
    psi(fs.find({3}) * 2) = 1.0;
    const ComplexVector dpsi = op.derivative(psi, Complex{0.0, 0.0});
    CHECK(std::abs(dpsi(fs.find({3}) * 2) - (-3.0 * nu)) < 1e-14);
    for (int i = 0; i < op.dim(); ++i)
        if (i != fs.find({3}) * 2) CHECK(std::abs(dpsi(i)) < 1e-14);
}

TEST_CASE("ladder amplitudes are sqrt(n)") {
    const auto fs = FockSpace::hypercube({2});
    const ComplexMatrix b = dense_lower(fs, 0);
    CHECK(std::abs(b(fs.find({0}), fs.find({1})) - 1.0) < 1e-15);             // b|1> = |0>
    CHECK(std::abs(b.adjoint()(fs.find({1}), fs.find({0})) - 1.0) < 1e-15);   // b†|0> = |1>
    CHECK(std::abs(b(fs.find({1}), fs.find({2})) - std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("sparse assembly equals the dense ladder construction") {
    std::mt19937_64 gen(12345);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 12; ++trial) {
        const int k_modes = 1 + static_cast<int>(gen() % 3);
        std::vector<int> caps(k_modes);
        for (auto& c : caps) c = 2 + static_cast<int>(gen() % 3);
        const bool triangular = trial % 2 == 1;
        const FockSpace fs =
            triangular ? FockSpace::triangular(k_modes, 4) : FockSpace::hypercube(caps);

        ComplexMatrix eta(k_modes, k_modes);
        ComplexVector phi0(k_modes), d(k_modes);
        for (int r = 0; r < k_modes; ++r) {
            phi0(r) = Complex{normal(gen), normal(gen)};
            d(r) = Complex{normal(gen), normal(gen)};
            for (int c = 0; c < k_modes; ++c) eta(r, c) = Complex{normal(gen), normal(gen)};
        }
        const auto basis = raw_basis(eta, phi0, d);
        const auto model = random_model(gen);
        const Complex z{normal(gen), normal(gen)};

        ComplexVector psi(2 * fs.size());
        for (int i = 0; i < psi.size(); ++i) psi(i) = Complex{normal(gen), normal(gen)};

        const HierarchyOperator op(model, basis, fs, Formulation::ExtendedRescaled);
        const ComplexVector fast = op.derivative(psi, z);
        const ComplexVector dense = dense_generator_rescaled(model, basis, fs, z) * psi;
        CHECK((fast - dense).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, dense.norm()));
    }
}

TEST_CASE("unscaled formulation equals the literal recursion") {
    std::mt19937_64 gen(777);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 8; ++trial) {
        const int k_modes = 1 + static_cast<int>(gen() % 2);
        const FockSpace fs = FockSpace::hypercube(std::vector<int>(k_modes, 3));
        ComplexMatrix eta(k_modes, k_modes);
        ComplexVector phi0(k_modes), d(k_modes);
        for (int r = 0; r < k_modes; ++r) {
            phi0(r) = Complex{normal(gen), normal(gen)};
            d(r) = Complex{normal(gen), normal(gen)};
            for (int c = 0; c < k_modes; ++c) eta(r, c) = Complex{normal(gen), normal(gen)};
        }
        const auto basis = raw_basis(eta, phi0, d);
        const auto model = random_model(gen);
        const Complex z{normal(gen), normal(gen)};
        ComplexVector psi(2 * fs.size());
        for (int i = 0; i < psi.size(); ++i) psi(i) = Complex{normal(gen), normal(gen)};

        const HierarchyOperator op(model, basis, fs, Formulation::ExtendedUnscaled);
        const ComplexVector fast = op.derivative(psi, z);
        const ComplexVector ref = dense_unscaled_rhs(model, basis, fs, z, psi);
        CHECK((fast - ref).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, ref.norm()));
    }
}

TEST_CASE("sqrt(d) formulation requires a diagonal eta") {
    std::mt19937_64 gen(3);
    const auto model = random_model(gen);
    ComplexMatrix eta(2, 2);
    eta << Complex{-1.0, 0.0}, Complex{0.5, 0.0}, Complex{0.0, 0.0}, Complex{-2.0, 0.0};
    const auto basis = raw_basis(eta, ComplexVector::Ones(2), ComplexVector::Ones(2));
    const auto fs = FockSpace::hypercube({2, 2});
    CHECK_THROWS_AS(HierarchyOperator(model, basis, fs, Formulation::ExponentialRescaledD),
                    std::invalid_argument);
}

TEST_CASE("sqrt(d) formulation matches its ladder form") {
    std::mt19937_64 gen(55);
    std::normal_distribution<double> normal;
    const int k_modes = 2;
    ComplexMatrix eta = ComplexMatrix::Zero(k_modes, k_modes);
    ComplexVector d(k_modes), phi0 = ComplexVector::Ones(k_modes);
    eta(0, 0) = Complex{-0.5, -1.1};
    eta(1, 1) = Complex{-1.2, 0.4};
    d(0) = Complex{0.3, 0.7};
    d(1) = Complex{-0.2, 0.1};
    const auto basis = raw_basis(eta, phi0, d);
    const auto model = random_model(gen);
    const auto fs = FockSpace::hypercube({3, 3});
    const Complex z{0.3, -0.4};
    ComplexVector psi(2 * fs.size());
    for (int i = 0; i < psi.size(); ++i) psi(i) = Complex{normal(gen), normal(gen)};

    // H_eff = H + z f - i sum nu_k n_k + i f sum sqrt(d_k) (b_k - b_k†)
    const ComplexMatrix id_s = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix id_f = ComplexMatrix::Identity(fs.size(), fs.size());
    ComplexMatrix h_eff = Eigen::kroneckerProduct(id_f, model.h).eval();
    h_eff += z * Eigen::kroneckerProduct(id_f, model.f);
    for (int k = 0; k < k_modes; ++k) {
        const ComplexMatrix bk = dense_lower(fs, k);
        const Complex nu = -eta(k, k);
        h_eff += -kI * nu * Eigen::kroneckerProduct((bk.adjoint() * bk).eval(), id_s);
        h_eff += kI * std::sqrt(d(k)) *
                 Eigen::kroneckerProduct((bk - bk.adjoint()).eval(), model.f);
    }
    const ComplexVector ref = (-kI * h_eff) * psi;

    const HierarchyOperator op(model, basis, fs, Formulation::ExponentialRescaledD);
    const ComplexVector fast = op.derivative(psi, z);
    CHECK((fast - ref).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, ref.norm()));
}

TEST_CASE("initial state occupies the zero index only") {
    std::mt19937_64 gen(9);
    const auto model = random_model(gen);
    ComplexMatrix eta(1, 1);
    eta(0, 0) = Complex{-1.0, 0.0};
    const auto basis = raw_basis(eta, ComplexVector::Ones(1), ComplexVector::Ones(1));
    const auto fs = FockSpace::hypercube({3});
    const HierarchyOperator op(model, basis, fs, Formulation::ExtendedRescaled);
    const ComplexVector psi = op.initial_state(model);
    CHECK(psi(0) == model.psi0(0));
    CHECK(psi(1) == model.psi0(1));
    CHECK(psi.tail(psi.size() - 2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("apply_heff picks the direction's noise") {
    SystemModel m = spin_boson(0.0, 0.5);
    ComplexMatrix eta(1, 1);
    eta(0, 0) = Complex{-1.0, 0.0};
    const auto basis = raw_basis(eta, ComplexVector::Ones(1), 0.1 * ComplexVector::Ones(1));
    const auto fs = FockSpace::hypercube({2});

    auto grid = std::make_shared<FrequencyGrid>();
    grid->omega.resize(1);
    grid->omega(0) = 1.0;
    grid->weight.resize(1);
    grid->weight(0) = 0.02;
    NoiseRealization nr;
    nr.grid = grid;
    nr.beta = 1.0;
    nr.a = ComplexVector::Constant(1, Complex{0.4, 0.1});
    nr.b = ComplexVector::Constant(1, Complex{-0.2, 0.3});
    nr.c = ComplexVector::Constant(1, Complex{0.05, -0.6});

    const HierarchyOperator op(m, basis, fs, Formulation::ExtendedRescaled);
    HierarchyState fwd{op.initial_state(m), Direction::Forward, Formulation::ExtendedRescaled};
    HierarchyState bwd{op.initial_state(m), Direction::Backward, Formulation::ExtendedRescaled};
    const double t = 0.8;
    const auto [zp, zm] = nr.eval(t);
    CHECK((apply_heff(fwd, t, nr, m, basis, fs) - op.derivative(fwd.amplitudes, zp))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    CHECK((apply_heff(bwd, t, nr, m, basis, fs) - op.derivative(bwd.amplitudes, zm))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
}

TEST_SUITE_END();
