#include <doctest.h>

#include <cmath>

#include "nmsse/exact_ref.hpp"

using namespace nmsse;

TEST_SUITE_BEGIN("oracle");

namespace {

EDConfig fig_config(double coupling, int n_boson) {
    EDConfig cfg;
    cfg.model = spin_boson(0.0, 0.5);
    cfg.coupling = coupling;
    cfg.frequency = 1.0;
    cfg.beta = 1.0;
    cfg.n_boson = n_boson;
    cfg.dt = 0.05;
    cfg.t_final = 10.0;
    cfg.output_stride = 4;
    return cfg;
}

}  // namespace

TEST_CASE("decoupled mode reduces to the rabi curve") {
    const auto res = exact_discrete(fig_config(0.0, 20));
    CHECK(res.populations(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    for (size_t i = 0; i < res.times.size(); ++i) {
        const double expected = std::cos(0.5 * res.times[i]) * std::cos(0.5 * res.times[i]);
        CHECK(std::abs(res.populations(static_cast<Eigen::Index>(i), 0) - expected) < 1e-10);
    }
}

TEST_CASE("trace is preserved by the eigenphase evolution") {
    const auto res = exact_discrete(fig_config(0.2, 20));
    for (Eigen::Index i = 0; i < res.trace.size(); ++i)
        CHECK(std::abs(res.trace(i) - 1.0) < 1e-10);
}

TEST_CASE("boson cutoff is converged at the benchmark parameters") {
    const auto a = exact_discrete(fig_config(0.2, 20));
    const auto b = exact_discrete(fig_config(0.2, 25));
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.populations.rows(); ++i)
        worst = std::max(worst, std::abs(a.populations(i, 0) - b.populations(i, 0)));
    CHECK(worst < 1e-8);
}

TEST_CASE("insufficient boson levels are refused with a suggestion") {
    CHECK_THROWS_WITH_AS(exact_discrete(fig_config(0.2, 5)),
                         doctest::Contains("suggest n_boson >="), std::invalid_argument);
}

TEST_SUITE_END();
