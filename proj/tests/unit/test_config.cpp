#include <doctest.h>

#include "nmsse/config.hpp"

using namespace nmsse;

namespace {

const char* kSample = R"(
# benchmark configuration
[system]
type = sbm
epsilon = 0.0
delta = 0.5

[bath]
sd = discrete
couplings = 0.2
frequencies = 1.0
beta = 1.0
scheme = ke_zhao

[basis]
choice = auto
n_max = 3
truncation = hypercube

[noise]
j_modes = 10
omega_max = 0

[run]
dt = 0.01
t_final = 10.0
output_stride = 10
n_traj = 100
master_seed = 42
formulation = extended_rescaled
threads = 1

[output]
directory = out/test
formats = csv, json
)";

}  // namespace

TEST_SUITE_BEGIN("config");

TEST_CASE("full parse and builders") {
    const RunConfig cfg = parse_config_text(kSample);
    CHECK(cfg.system_type == "sbm");
    CHECK(cfg.delta == 0.5);
    CHECK(cfg.couplings == std::vector<double>{0.2});
    CHECK(cfg.master_seed == 42);
    CHECK(cfg.directory == "out/test");

    const auto model = make_model(cfg);
    CHECK(model.h(0, 1) == Complex{0.5, 0.0});
    const auto bath = make_bath(cfg);
    CHECK(bath.scheme == AbcfScheme::KeZhao);
    const auto basis = make_basis(cfg, bath);
    CHECK(basis.size == 2);
    const auto space = make_space(cfg, basis);
    CHECK(space.size() == 16);
    const auto settings = make_settings(cfg);
    CHECK(settings.n_traj == 100);
    CHECK(settings.formulation == Formulation::ExtendedRescaled);
}

TEST_CASE("echo round-trips") {
    const RunConfig cfg = parse_config_text(kSample);
    const RunConfig again = parse_config_text(config_to_text(cfg));
    CHECK(again.system_type == cfg.system_type);
    CHECK(again.delta == cfg.delta);
    CHECK(again.couplings == cfg.couplings);
    CHECK(again.n_max == cfg.n_max);
    CHECK(again.dt == cfg.dt);
    CHECK(again.master_seed == cfg.master_seed);
    CHECK(again.directory == cfg.directory);
    CHECK(again.formats == cfg.formats);
}

TEST_CASE("schema violations are rejected") {
    CHECK_THROWS_AS(parse_config_text("[system]\ntype = sbm\nunknown_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[mystery]\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[system]\ntype = sbm\ntype = sbm\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("key_without_block = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[system]\ntype = hydrogen\n"), ConfigError);

    std::string bad_dt(kSample);
    const auto pos = bad_dt.find("dt = 0.01");
    bad_dt.replace(pos, 9, "dt = fast");
    CHECK_THROWS_AS(parse_config_text(bad_dt), ConfigError);

    std::string negative_beta(kSample);
    const auto bpos = negative_beta.find("beta = 1.0");
    negative_beta.replace(bpos, 10, "beta = -1.0");
    CHECK_THROWS_AS(parse_config_text(negative_beta), ConfigError);
}

TEST_CASE("per-mode caps must match the basis size") {
    std::string cfg_text(kSample);
    const auto pos = cfg_text.find("n_max = 3");
    cfg_text.replace(pos, 9, "n_max = 3, 3, 3");
    const RunConfig cfg = parse_config_text(cfg_text);
    const auto bath = make_bath(cfg);
    const auto basis = make_basis(cfg, bath);
    CHECK_THROWS_AS(make_space(cfg, basis), ConfigError);
}

TEST_CASE("triangular truncation defaults l_total to a scalar n_max") {
    std::string cfg_text(kSample);
    const auto pos = cfg_text.find("truncation = hypercube");
    cfg_text.replace(pos, 22, "truncation = triangular");
    const RunConfig cfg = parse_config_text(cfg_text);
    CHECK(cfg.l_total == 3);
    const auto bath = make_bath(cfg);
    const auto basis = make_basis(cfg, bath);
    const auto space = make_space(cfg, basis);
    CHECK(space.size() == 10);
}

TEST_CASE("transfer model wiring") {
    const char* transfer_cfg = R"(
[system]
type = transfer
e_donor = 1.0
e_acceptor = 0.0
j_coupling = 0.5

[bath]
sd = brownian
lambda = 1.0
omega0 = 1.0
zeta = 2.0
beta = 1.0

[basis]
n_max = 9
truncation = triangular

[run]
dt = 0.01
t_final = 10.0
n_traj = 10
)";
    const RunConfig cfg = parse_config_text(transfer_cfg);
    const auto model = make_model(cfg);
    CHECK(model.h(1, 1) == Complex{1.0, 0.0});  // E_A + lambda from the bath
    CHECK(model.f(1, 1) == Complex{1.0, 0.0});  // acceptor projector default
}

TEST_SUITE_END();
