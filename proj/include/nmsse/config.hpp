// config.hpp — structured-text run configuration (key = value inside [blocks])

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nmsse/basis.hpp"
#include "nmsse/bath.hpp"
#include "nmsse/ensemble.hpp"
#include "nmsse/fock_space.hpp"
#include "nmsse/models.hpp"

namespace nmsse {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    // [system]
    std::string system_type;  // sbm | transfer
    double epsilon{0.0}, delta{0.0};
    double e_donor{0.0}, e_acceptor{0.0}, j_coupling{0.0};
    std::optional<double> lambda_shift;  // defaults to the Brownian bath lambda
    std::string coupling_op{""};         // sigma_z | acceptor | acceptor_minus

    // [bath]
    std::string sd_type;  // discrete | ohmic_exp | ohmic_alg | brownian
    std::vector<double> couplings, frequencies;
    double alpha{0.0}, omega_c{0.0};
    double lambda{0.0}, omega0{0.0}, zeta{0.0};
    double beta{1.0};
    std::string scheme{"ke_zhao"};

    // [basis]
    std::string basis_choice{"auto"};
    std::vector<int> n_max;  // scalar or per-mode
    std::string truncation{"hypercube"};
    int l_total{-1};

    // [noise]
    int j_modes{3000};
    double omega_max{0.0};

    // [run]
    double dt{0.01};
    double t_final{10.0};
    int output_stride{10};
    int n_traj{1000};
    std::uint64_t master_seed{1};
    std::string formulation{"extended_rescaled"};
    int threads{1};

    // [output]
    std::string directory{"out"};
    std::vector<std::string> formats{"csv", "json"};
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// echo back in the same block format (round-trips through parse_config_text)
std::string config_to_text(const RunConfig& cfg);

// Builders; each throws ConfigError on inconsistent settings.
SystemModel make_model(const RunConfig& cfg);
BathSpec make_bath(const RunConfig& cfg);
BasisSet make_basis(const RunConfig& cfg, const BathSpec& bath);
FockSpace make_space(const RunConfig& cfg, const BasisSet& basis);
EnsembleSettings make_settings(const RunConfig& cfg);

}  // namespace nmsse
