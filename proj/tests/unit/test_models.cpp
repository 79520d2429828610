#include <doctest.h>

#include <cmath>

#include "nmsse/exact_ref.hpp"
#include "nmsse/models.hpp"

using namespace nmsse;

TEST_SUITE_BEGIN("models");

TEST_CASE("spin-boson constructor") {
    const auto m = spin_boson(0.0, 0.5);
    CHECK(m.h(0, 0) == Complex{0.0, 0.0});
    CHECK(m.h(0, 1) == Complex{0.5, 0.0});
    CHECK(m.h(1, 0) == Complex{0.5, 0.0});
    CHECK(m.h(1, 1) == Complex{0.0, 0.0});
    CHECK(m.f(0, 0) == Complex{1.0, 0.0});
    CHECK(m.f(1, 1) == Complex{-1.0, 0.0});
    CHECK(m.psi0(0) == Complex{1.0, 0.0});
    CHECK(m.psi0(1) == Complex{0.0, 0.0});

    const auto biased = spin_boson(1.0, 1.0);
    CHECK(biased.h(0, 0) == Complex{1.0, 0.0});
    CHECK(biased.h(1, 1) == Complex{-1.0, 0.0});
    CHECK(biased.h(0, 1) == Complex{1.0, 0.0});

    const auto frozen = spin_boson(0.0, 0.0);
    CHECK(frozen.h.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("transfer constructor") {
    const auto m = transfer(1.0, 0.0, 1.0, 0.5);
    CHECK(m.h(0, 0) == Complex{1.0, 0.0});
    CHECK(m.h(1, 1) == Complex{1.0, 0.0});  // E_A + lambda
    CHECK(m.h(0, 1) == Complex{0.5, 0.0});
    CHECK(m.f(0, 0) == Complex{0.0, 0.0});
    CHECK(m.f(1, 1) == Complex{1.0, 0.0});

    const auto sz = transfer(1.0, 0.0, 1.0, 0.5, TransferCoupling::SigmaZ);
    CHECK(sz.f(0, 0) == Complex{1.0, 0.0});
    CHECK(sz.f(1, 1) == Complex{-1.0, 0.0});

    const auto am = transfer(1.0, 0.0, 1.0, 0.5, TransferCoupling::AcceptorMinus);
    CHECK(am.f(1, 1) == Complex{-1.0, 0.0});
}

TEST_CASE("closed-system rabi formula") {
    const auto m = spin_boson(0.0, 0.5);
    CHECK(rabi_population(m, 0.0) == doctest::Approx(1.0));
    CHECK(rabi_population(m, kPi) == doctest::Approx(0.0).epsilon(1e-12));
    for (double t : {0.3, 1.0, 2.7}) {
        CHECK(rabi_population(m, t) == doctest::Approx(std::cos(0.5 * t) * std::cos(0.5 * t)));
    }
    // resonant transfer: delta = E_D - E_A - lambda = 0
    const auto tr = transfer(1.0, 0.0, 1.0, 0.5);
    CHECK(rabi_population(tr, kPi) == doctest::Approx(0.0).epsilon(1e-12));
    // detuned: P = 1 - J^2/(J^2 + delta^2/4) sin^2(sqrt(J^2 + delta^2/4) t)
    const auto det = transfer(2.0, 0.0, 0.5, 0.4);
    const double delta_half = 0.5 * (2.0 - 0.5);
    const double omega = std::sqrt(0.16 + delta_half * delta_half);
    const double t = 1.9;
    const double expected = 1.0 - 0.16 / (omega * omega) * std::pow(std::sin(omega * t), 2);
    CHECK(rabi_population(det, t) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_SUITE_END();
