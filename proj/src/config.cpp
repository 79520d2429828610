#include "nmsse/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace nmsse {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid number for '" + key + "': " + v);
    }
}

long long to_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer for '" + key + "': " + v);
    }
}

using KvMap = std::map<std::string, std::string>;

struct ParsedBlocks {
    std::map<std::string, KvMap> blocks;
};

ParsedBlocks tokenize(const std::string& text) {
    ParsedBlocks out;
    std::string block;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed block header");
            block = trim(line.substr(1, line.size() - 2));
            if (block.empty()) throw ConfigError("empty block name");
            out.blocks[block];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        if (block.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": key outside a block");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (!out.blocks[block].emplace(key, value).second)
            throw ConfigError("duplicate key '" + key + "' in [" + block + "]");
    }
    return out;
}

// consume-and-check helper so unknown keys are rejected
class BlockReader {
public:
    BlockReader(const std::string& name, const KvMap* kv) : name_(name), kv_(kv) {}

    std::optional<std::string> get(const std::string& key) {
        seen_.insert(key);
        if (!kv_) return std::nullopt;
        const auto it = kv_->find(key);
        if (it == kv_->end()) return std::nullopt;
        return it->second;
    }

    std::string require(const std::string& key) {
        auto v = get(key);
        if (!v) throw ConfigError("missing required key '" + key + "' in [" + name_ + "]");
        return *v;
    }

    void finish() const {
        if (!kv_) return;
        for (const auto& [k, v] : *kv_) {
            if (!seen_.count(k))
                throw ConfigError("unknown key '" + k + "' in [" + name_ + "]");
        }
    }

private:
    std::string name_;
    const KvMap* kv_;
    std::set<std::string> seen_;
};

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    const ParsedBlocks parsed = tokenize(text);
    static const std::set<std::string> known_blocks = {"system", "bath",  "basis",
                                                       "noise",  "run",   "output"};
    for (const auto& [name, kv] : parsed.blocks) {
        if (!known_blocks.count(name)) throw ConfigError("unknown block [" + name + "]");
    }
    auto block = [&](const std::string& name) -> const KvMap* {
        const auto it = parsed.blocks.find(name);
        return it == parsed.blocks.end() ? nullptr : &it->second;
    };

    RunConfig cfg;

    {
        BlockReader r("system", block("system"));
        cfg.system_type = r.require("type");
        if (cfg.system_type == "sbm") {
            cfg.epsilon = to_double("epsilon", r.require("epsilon"));
            cfg.delta = to_double("delta", r.require("delta"));
        } else if (cfg.system_type == "transfer") {
            cfg.e_donor = to_double("e_donor", r.require("e_donor"));
            cfg.e_acceptor = to_double("e_acceptor", r.require("e_acceptor"));
            cfg.j_coupling = to_double("j_coupling", r.require("j_coupling"));
            if (auto v = r.get("lambda_shift")) cfg.lambda_shift = to_double("lambda_shift", *v);
        } else {
            throw ConfigError("system type must be sbm or transfer");
        }
        if (auto v = r.get("coupling")) cfg.coupling_op = *v;
        r.finish();
    }

    {
        BlockReader r("bath", block("bath"));
        cfg.sd_type = r.require("sd");
        if (cfg.sd_type == "discrete") {
            for (const auto& c : split_list(r.require("couplings")))
                cfg.couplings.push_back(to_double("couplings", c));
            for (const auto& w : split_list(r.require("frequencies")))
                cfg.frequencies.push_back(to_double("frequencies", w));
            if (cfg.couplings.size() != cfg.frequencies.size())
                throw ConfigError("couplings and frequencies must have equal length");
        } else if (cfg.sd_type == "ohmic_exp" || cfg.sd_type == "ohmic_alg") {
            cfg.alpha = to_double("alpha", r.require("alpha"));
            cfg.omega_c = to_double("omega_c", r.require("omega_c"));
        } else if (cfg.sd_type == "brownian") {
            cfg.lambda = to_double("lambda", r.require("lambda"));
            cfg.omega0 = to_double("omega0", r.require("omega0"));
            cfg.zeta = to_double("zeta", r.require("zeta"));
        } else {
            throw ConfigError("sd must be discrete, ohmic_exp, ohmic_alg or brownian");
        }
        cfg.beta = to_double("beta", r.require("beta"));
        if (cfg.beta <= 0.0) throw ConfigError("beta must be positive");
        if (auto v = r.get("scheme")) cfg.scheme = *v;
        if (cfg.scheme != "ke_zhao" && cfg.scheme != "song_shi" && cfg.scheme != "diosi_strunz")
            throw ConfigError("scheme must be ke_zhao, song_shi or diosi_strunz");
        r.finish();
    }

    {
        BlockReader r("basis", block("basis"));
        if (auto v = r.get("choice")) cfg.basis_choice = *v;
        if (cfg.basis_choice != "auto" && cfg.basis_choice != "force_exponential")
            throw ConfigError("basis choice must be auto or force_exponential");
        for (const auto& n : split_list(r.require("n_max"))) {
            const long long v = to_int("n_max", n);
            if (v < 0) throw ConfigError("n_max must be non-negative");
            cfg.n_max.push_back(static_cast<int>(v));
        }
        if (auto v = r.get("truncation")) cfg.truncation = *v;
        if (cfg.truncation != "hypercube" && cfg.truncation != "triangular")
            throw ConfigError("truncation must be hypercube or triangular");
        if (auto v = r.get("l_total")) cfg.l_total = static_cast<int>(to_int("l_total", *v));
        if (cfg.truncation == "triangular" && cfg.l_total < 0 && cfg.n_max.size() == 1)
            cfg.l_total = cfg.n_max[0];
        if (cfg.truncation == "triangular" && cfg.l_total < 0)
            throw ConfigError("triangular truncation needs l_total (or a scalar n_max)");
        r.finish();
    }

    {
        BlockReader r("noise", block("noise"));
        if (auto v = r.get("j_modes")) cfg.j_modes = static_cast<int>(to_int("j_modes", *v));
        if (cfg.j_modes < 1) throw ConfigError("j_modes must be positive");
        if (auto v = r.get("omega_max")) cfg.omega_max = to_double("omega_max", *v);
        if (cfg.omega_max < 0.0) throw ConfigError("omega_max must be non-negative");
        r.finish();
    }

    {
        BlockReader r("run", block("run"));
        cfg.dt = to_double("dt", r.require("dt"));
        if (cfg.dt <= 0.0) throw ConfigError("dt must be positive");
        cfg.t_final = to_double("t_final", r.require("t_final"));
        if (cfg.t_final <= 0.0) throw ConfigError("t_final must be positive");
        if (auto v = r.get("output_stride"))
            cfg.output_stride = static_cast<int>(to_int("output_stride", *v));
        if (cfg.output_stride < 1) throw ConfigError("output_stride must be positive");
        cfg.n_traj = static_cast<int>(to_int("n_traj", r.require("n_traj")));
        if (cfg.n_traj < 1) throw ConfigError("n_traj must be positive");
        if (auto v = r.get("master_seed"))
            cfg.master_seed = static_cast<std::uint64_t>(to_int("master_seed", *v));
        if (auto v = r.get("formulation")) cfg.formulation = *v;
        if (cfg.formulation != "extended_rescaled" && cfg.formulation != "extended_unscaled" &&
            cfg.formulation != "exponential_rescaled_d")
            throw ConfigError("unknown formulation '" + cfg.formulation + "'");
        if (auto v = r.get("threads")) cfg.threads = static_cast<int>(to_int("threads", *v));
        if (cfg.threads < 1) throw ConfigError("threads must be positive");
        r.finish();
    }

    {
        BlockReader r("output", block("output"));
        if (auto v = r.get("directory")) cfg.directory = *v;
        if (auto v = r.get("formats")) {
            cfg.formats = split_list(*v);
            for (const auto& f : cfg.formats)
                if (f != "csv" && f != "json") throw ConfigError("unknown output format " + f);
        }
        r.finish();
    }

    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string config_to_text(const RunConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "[system]\n";
    os << "type = " << cfg.system_type << "\n";
    if (cfg.system_type == "sbm") {
        os << "epsilon = " << cfg.epsilon << "\n";
        os << "delta = " << cfg.delta << "\n";
    } else {
        os << "e_donor = " << cfg.e_donor << "\n";
        os << "e_acceptor = " << cfg.e_acceptor << "\n";
        os << "j_coupling = " << cfg.j_coupling << "\n";
        if (cfg.lambda_shift) os << "lambda_shift = " << *cfg.lambda_shift << "\n";
    }
    if (!cfg.coupling_op.empty()) os << "coupling = " << cfg.coupling_op << "\n";

    os << "\n[bath]\n";
    os << "sd = " << cfg.sd_type << "\n";
    auto list = [&](const std::vector<double>& v) {
        std::ostringstream s;
        s.precision(17);
        for (size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
        return s.str();
    };
    if (cfg.sd_type == "discrete") {
        os << "couplings = " << list(cfg.couplings) << "\n";
        os << "frequencies = " << list(cfg.frequencies) << "\n";
    } else if (cfg.sd_type == "brownian") {
        os << "lambda = " << cfg.lambda << "\n";
        os << "omega0 = " << cfg.omega0 << "\n";
        os << "zeta = " << cfg.zeta << "\n";
    } else {
        os << "alpha = " << cfg.alpha << "\n";
        os << "omega_c = " << cfg.omega_c << "\n";
    }
    os << "beta = " << cfg.beta << "\n";
    os << "scheme = " << cfg.scheme << "\n";

    os << "\n[basis]\n";
    os << "choice = " << cfg.basis_choice << "\n";
    os << "n_max = ";
    for (size_t i = 0; i < cfg.n_max.size(); ++i) os << (i ? ", " : "") << cfg.n_max[i];
    os << "\n";
    os << "truncation = " << cfg.truncation << "\n";
    if (cfg.l_total >= 0) os << "l_total = " << cfg.l_total << "\n";

    os << "\n[noise]\n";
    os << "j_modes = " << cfg.j_modes << "\n";
    os << "omega_max = " << cfg.omega_max << "\n";

    os << "\n[run]\n";
    os << "dt = " << cfg.dt << "\n";
    os << "t_final = " << cfg.t_final << "\n";
    os << "output_stride = " << cfg.output_stride << "\n";
    os << "n_traj = " << cfg.n_traj << "\n";
    os << "master_seed = " << cfg.master_seed << "\n";
    os << "formulation = " << cfg.formulation << "\n";
    os << "threads = " << cfg.threads << "\n";

    os << "\n[output]\n";
    os << "directory = " << cfg.directory << "\n";
    os << "formats = ";
    for (size_t i = 0; i < cfg.formats.size(); ++i) os << (i ? ", " : "") << cfg.formats[i];
    os << "\n";
    return os.str();
}

SystemModel make_model(const RunConfig& cfg) {
    if (cfg.system_type == "sbm") {
        if (!cfg.coupling_op.empty() && cfg.coupling_op != "sigma_z")
            throw ConfigError("sbm supports only the sigma_z coupling");
        return spin_boson(cfg.epsilon, cfg.delta);
    }
    double lambda = 0.0;
    if (cfg.lambda_shift)
        lambda = *cfg.lambda_shift;
    else if (cfg.sd_type == "brownian")
        lambda = cfg.lambda;
    else
        throw ConfigError("transfer model needs lambda_shift unless the bath is brownian");
    TransferCoupling coupling = TransferCoupling::Acceptor;
    if (cfg.coupling_op == "sigma_z")
        coupling = TransferCoupling::SigmaZ;
    else if (cfg.coupling_op == "acceptor_minus")
        coupling = TransferCoupling::AcceptorMinus;
    else if (!cfg.coupling_op.empty() && cfg.coupling_op != "acceptor")
        throw ConfigError("unknown coupling operator '" + cfg.coupling_op + "'");
    return transfer(cfg.e_donor, cfg.e_acceptor, lambda, cfg.j_coupling, coupling);
}

BathSpec make_bath(const RunConfig& cfg) {
    BathSpec bath;
    if (cfg.sd_type == "discrete") {
        std::vector<DiscreteMode> modes;
        for (size_t i = 0; i < cfg.couplings.size(); ++i)
            modes.push_back({cfg.couplings[i], cfg.frequencies[i]});
        bath.sd = SpectralDensity::discrete(std::move(modes));
    } else if (cfg.sd_type == "ohmic_exp") {
        bath.sd = SpectralDensity::ohmic_exp(cfg.alpha, cfg.omega_c);
    } else if (cfg.sd_type == "ohmic_alg") {
        bath.sd = SpectralDensity::ohmic_alg(cfg.alpha, cfg.omega_c);
    } else {
        bath.sd = SpectralDensity::brownian(cfg.lambda, cfg.omega0, cfg.zeta);
    }
    bath.beta = cfg.beta;
    if (cfg.scheme == "ke_zhao")
        bath.scheme = AbcfScheme::KeZhao;
    else if (cfg.scheme == "song_shi")
        bath.scheme = AbcfScheme::SongShi;
    else
        bath.scheme = AbcfScheme::DiosiStrunz;
    return bath;
}

BasisSet make_basis(const RunConfig& cfg, const BathSpec& bath) {
    return build_basis(bath, cfg.basis_choice == "auto" ? BasisChoice::Auto
                                                        : BasisChoice::ForceExponential);
}

FockSpace make_space(const RunConfig& cfg, const BasisSet& basis) {
    if (cfg.truncation == "triangular") return FockSpace::triangular(basis.size, cfg.l_total);
    std::vector<int> caps;
    if (cfg.n_max.size() == 1)
        caps.assign(basis.size, cfg.n_max[0]);
    else if (static_cast<int>(cfg.n_max.size()) == basis.size)
        caps = cfg.n_max;
    else
        throw ConfigError("n_max must be scalar or give one cap per basis mode (" +
                          std::to_string(basis.size) + " modes)");
    return FockSpace::hypercube(caps);
}

EnsembleSettings make_settings(const RunConfig& cfg) {
    EnsembleSettings s;
    s.dt = cfg.dt;
    s.t_final = cfg.t_final;
    s.output_stride = cfg.output_stride;
    s.n_traj = cfg.n_traj;
    s.master_seed = cfg.master_seed;
    if (cfg.formulation == "extended_rescaled")
        s.formulation = Formulation::ExtendedRescaled;
    else if (cfg.formulation == "extended_unscaled")
        s.formulation = Formulation::ExtendedUnscaled;
    else
        s.formulation = Formulation::ExponentialRescaledD;
    s.threads = cfg.threads;
    s.noise_modes = cfg.j_modes;
    s.noise_omega_max = cfg.omega_max;
    return s;
}

}  // namespace nmsse
