#include "tdcim/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace tdcim {

namespace {

using nlohmann::json;

void expect_object(const json& j, const std::string& path) {
    if (!j.is_object())
        throw ConfigError("config: " + path + " must be an object");
}

// Rejects keys outside `allowed` so typos fail loudly instead of being
// silently ignored.
void check_keys(const json& j, const std::string& path,
                const std::set<std::string>& allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key()))
            throw ConfigError("config: unknown key \"" + path + it.key() + "\"");
    }
}

double get_num(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number())
        throw ConfigError(std::string("config: \"") + key + "\" must be a number");
    return v.get<double>();
}

std::uint64_t get_uint(const json& j, const char* key, std::uint64_t fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_unsigned())
        throw ConfigError(std::string("config: \"") + key +
                          "\" must be a non-negative integer");
    return v.get<std::uint64_t>();
}

std::string get_str(const json& j, const char* key, std::string fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_string())
        throw ConfigError(std::string("config: \"") + key + "\" must be a string");
    return v.get<std::string>();
}

void parse_device(const json& j, FeFetParams& p) {
    expect_object(j, "device");
    check_keys(j, "device.", {"vth_low", "vth_high", "g_on", "g_leak",
                              "v_slope", "sigma_vth"});
    p.vth_low = get_num(j, "vth_low", p.vth_low);
    p.vth_high = get_num(j, "vth_high", p.vth_high);
    p.g_on = get_num(j, "g_on", p.g_on);
    p.g_leak = get_num(j, "g_leak", p.g_leak);
    p.v_slope = get_num(j, "v_slope", p.v_slope);
    p.sigma_vth = get_num(j, "sigma_vth", p.sigma_vth);
}

void parse_chain(const json& j, ChainConfig& c) {
    expect_object(j, "chain");
    check_keys(j, "chain.", {"n_stages", "topology", "t_intrinsic", "c_load",
                             "c_intrinsic", "r_drive", "vdd"});
    c.n_stages = static_cast<std::size_t>(get_uint(j, "n_stages", c.n_stages));
    const std::string topo = get_str(
        j, "topology", c.topology == ChainTopology::Buffer ? "buffer" : "inverter");
    if (topo == "buffer")
        c.topology = ChainTopology::Buffer;
    else if (topo == "inverter")
        c.topology = ChainTopology::Inverter;
    else
        throw ConfigError("config: chain.topology must be \"buffer\" or \"inverter\"");
    c.t_intrinsic = get_num(j, "t_intrinsic", c.t_intrinsic);
    c.c_load = get_num(j, "c_load", c.c_load);
    c.r_drive = get_num(j, "r_drive", c.r_drive);
    c.vdd = get_num(j, "vdd", c.vdd);
    // Keep the intrinsic delay calibration unless the file pins a value.
    if (j.contains("c_intrinsic"))
        c.c_intrinsic = get_num(j, "c_intrinsic", c.c_intrinsic);
    else
        c.c_intrinsic = ChainConfig::calibrated_c_intrinsic(c.t_intrinsic, c.r_drive);
}

void parse_array(const json& j, ExperimentConfig& cfg) {
    expect_object(j, "array");
    check_keys(j, "array.", {"rows", "cols", "e_intrinsic_per_stage",
                             "e_write_per_cell", "t_sense_overhead", "v_read",
                             "solver"});
    cfg.array_rows = static_cast<std::size_t>(get_uint(j, "rows", cfg.array_rows));
    cfg.array_cols = static_cast<std::size_t>(get_uint(j, "cols", cfg.array_cols));
    cfg.array_op.e_intrinsic_per_stage =
        get_num(j, "e_intrinsic_per_stage", cfg.array_op.e_intrinsic_per_stage);
    cfg.array_op.e_write_per_cell =
        get_num(j, "e_write_per_cell", cfg.array_op.e_write_per_cell);
    cfg.array_op.t_sense_overhead =
        get_num(j, "t_sense_overhead", cfg.array_op.t_sense_overhead);
    cfg.array_op.v_read = get_num(j, "v_read", cfg.array_op.v_read);
    const std::string solver = get_str(
        j, "solver",
        cfg.array_op.solver == VintSolver::FixedPoint ? "fixed_point" : "rail");
    if (solver == "rail")
        cfg.array_op.solver = VintSolver::RailReferenced;
    else if (solver == "fixed_point")
        cfg.array_op.solver = VintSolver::FixedPoint;
    else
        throw ConfigError("config: array.solver must be \"rail\" or \"fixed_point\"");
}

void parse_mc(const json& j, MonteCarloSpec& m) {
    expect_object(j, "montecarlo");
    check_keys(j, "montecarlo.", {"n_trials", "sigma_vth", "v_read_sweep",
                                  "v_read_min", "v_read_max", "v_read_step",
                                  "chain_lengths", "sense_margin", "seed"});
    m.n_trials = static_cast<std::size_t>(get_uint(j, "n_trials", m.n_trials));
    m.sigma_vth = get_num(j, "sigma_vth", m.sigma_vth);
    const bool has_bounds = j.contains("v_read_min") || j.contains("v_read_max") ||
                            j.contains("v_read_step");
    if (j.contains("v_read_sweep")) {
        // An explicit list of read points; empty means the built-in sweep.
        if (has_bounds)
            throw ConfigError(
                "config: montecarlo.v_read_sweep excludes v_read_min/max/step");
        const json& arr = j.at("v_read_sweep");
        if (!arr.is_array())
            throw ConfigError("config: montecarlo.v_read_sweep must be an array");
        m.v_read_sweep.clear();
        for (const json& v : arr) {
            if (!v.is_number())
                throw ConfigError("config: montecarlo.v_read_sweep entries must be numbers");
            m.v_read_sweep.push_back(v.get<double>());
        }
    } else if (has_bounds) {
        const double lo = get_num(j, "v_read_min", 0.0);
        const double hi = get_num(j, "v_read_max", 3.0);
        const double step = get_num(j, "v_read_step", 0.1);
        if (step <= 0.0 || hi < lo)
            throw ConfigError("config: montecarlo v_read sweep bounds are invalid");
        m.v_read_sweep.clear();
        for (int i = 0;; ++i) {
            const double v = lo + step * i;
            if (v > hi + step * 0.5) break;
            m.v_read_sweep.push_back(v);
        }
    }
    if (j.contains("chain_lengths")) {
        const json& arr = j.at("chain_lengths");
        if (!arr.is_array() || arr.empty())
            throw ConfigError("config: montecarlo.chain_lengths must be a non-empty array");
        m.chain_lengths.clear();
        for (const json& v : arr) {
            if (!v.is_number_unsigned())
                throw ConfigError("config: montecarlo.chain_lengths entries must be integers");
            m.chain_lengths.push_back(v.get<std::size_t>());
        }
    }
    m.sense_margin = get_num(j, "sense_margin", m.sense_margin);
    m.seed = get_uint(j, "seed", m.seed);
}

void parse_dse(const json& j, DseSpec& d) {
    expect_object(j, "dse");
    check_keys(j, "dse.", {"c_loads", "stage_counts", "vdds"});
    if (j.contains("c_loads")) {
        const json& arr = j.at("c_loads");
        if (!arr.is_array() || arr.empty())
            throw ConfigError("config: dse.c_load_values must be a non-empty array");
        d.c_load_values.clear();
        for (const json& v : arr) d.c_load_values.push_back(v.get<double>());
    }
    if (j.contains("stage_counts")) {
        const json& arr = j.at("stage_counts");
        if (!arr.is_array() || arr.empty())
            throw ConfigError("config: dse.stage_counts must be a non-empty array");
        d.stage_counts.clear();
        for (const json& v : arr) d.stage_counts.push_back(v.get<std::size_t>());
    }
    if (j.contains("vdds")) {
        const json& arr = j.at("vdds");
        if (!arr.is_array() || arr.empty())
            throw ConfigError("config: dse.vdd_values must be a non-empty array");
        d.vdd_values.clear();
        for (const json& v : arr) d.vdd_values.push_back(v.get<double>());
    }
}

void parse_hdc(const json& j, HdcConfig& h) {
    expect_object(j, "hdc");
    check_keys(j, "hdc.", {"n_features", "dim", "quant_bits", "seed", "dataset",
                           "n_classes", "train_per_class", "test_per_class",
                           "blob_noise", "backend"});
    h.n_features = static_cast<std::size_t>(get_uint(j, "n_features", h.n_features));
    h.dim = static_cast<std::size_t>(get_uint(j, "dim", h.dim));
    h.quant_bits = static_cast<unsigned>(get_uint(j, "quant_bits", h.quant_bits));
    h.seed = get_uint(j, "seed", h.seed);
    h.dataset = get_str(j, "dataset", h.dataset);
    h.n_classes = static_cast<std::size_t>(get_uint(j, "n_classes", h.n_classes));
    h.train_per_class =
        static_cast<std::size_t>(get_uint(j, "train_per_class", h.train_per_class));
    h.test_per_class =
        static_cast<std::size_t>(get_uint(j, "test_per_class", h.test_per_class));
    h.blob_noise = get_num(j, "blob_noise", h.blob_noise);
    h.backend = get_str(j, "backend", h.backend);
    if (h.backend != "software" && h.backend != "fabric")
        throw ConfigError("config: hdc.backend must be \"software\" or \"fabric\"");
}

void parse_alloc(const json& j, AllocConfig& a) {
    expect_object(j, "alloc");
    check_keys(j, "alloc.", {"n_tiles", "tile_rows", "tile_cols"});
    a.n_tiles = static_cast<std::size_t>(get_uint(j, "n_tiles", a.n_tiles));
    a.tile_rows = static_cast<std::size_t>(get_uint(j, "tile_rows", a.tile_rows));
    a.tile_cols = static_cast<std::size_t>(get_uint(j, "tile_cols", a.tile_cols));
}

} // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    expect_object(j, "(root)");
    check_keys(j, "", {"device", "v_read", "chain", "array", "montecarlo",
                       "dse", "hdc", "alloc", "seed"});

    ExperimentConfig cfg;
    if (j.contains("device")) parse_device(j.at("device"), cfg.device);
    cfg.v_read = get_num(j, "v_read", cfg.v_read);
    if (j.contains("chain")) parse_chain(j.at("chain"), cfg.chain);
    if (j.contains("array")) parse_array(j.at("array"), cfg);
    if (j.contains("montecarlo")) parse_mc(j.at("montecarlo"), cfg.mc);
    if (j.contains("dse")) parse_dse(j.at("dse"), cfg.dse);
    if (j.contains("hdc")) parse_hdc(j.at("hdc"), cfg.hdc);
    if (j.contains("alloc")) parse_alloc(j.at("alloc"), cfg.alloc);
    cfg.seed = get_uint(j, "seed", cfg.seed);
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

nlohmann::json ExperimentConfig::to_json() const {
    json j;
    j["device"] = {{"vth_low", device.vth_low},   {"vth_high", device.vth_high},
                   {"g_on", device.g_on},         {"g_leak", device.g_leak},
                   {"v_slope", device.v_slope},   {"sigma_vth", device.sigma_vth}};
    j["v_read"] = v_read;
    j["chain"] = {
        {"n_stages", chain.n_stages},
        {"topology", chain.topology == ChainTopology::Buffer ? "buffer" : "inverter"},
        {"t_intrinsic", chain.t_intrinsic},
        {"c_load", chain.c_load},
        {"c_intrinsic", chain.c_intrinsic},
        {"r_drive", chain.r_drive},
        {"vdd", chain.vdd}};
    j["array"] = {
        {"rows", array_rows},
        {"cols", array_cols},
        {"e_intrinsic_per_stage", array_op.e_intrinsic_per_stage},
        {"e_write_per_cell", array_op.e_write_per_cell},
        {"t_sense_overhead", array_op.t_sense_overhead},
        {"v_read", array_op.v_read},
        {"solver",
         array_op.solver == VintSolver::FixedPoint ? "fixed_point" : "rail"}};
    j["montecarlo"] = {{"n_trials", mc.n_trials},
                       {"sigma_vth", mc.sigma_vth},
                       {"v_read_sweep", mc.v_read_sweep},
                       {"chain_lengths", mc.chain_lengths},
                       {"sense_margin", mc.sense_margin},
                       {"seed", mc.seed}};
    j["dse"] = {{"c_loads", dse.c_load_values},
                {"stage_counts", dse.stage_counts},
                {"vdds", dse.vdd_values}};
    j["hdc"] = {{"n_features", hdc.n_features},
                {"dim", hdc.dim},
                {"quant_bits", hdc.quant_bits},
                {"seed", hdc.seed},
                {"dataset", hdc.dataset},
                {"n_classes", hdc.n_classes},
                {"train_per_class", hdc.train_per_class},
                {"test_per_class", hdc.test_per_class},
                {"blob_noise", hdc.blob_noise},
                {"backend", hdc.backend}};
    j["alloc"] = {{"n_tiles", alloc.n_tiles},
                  {"tile_rows", alloc.tile_rows},
                  {"tile_cols", alloc.tile_cols}};
    j["seed"] = seed;
    return j;
}

void ExperimentConfig::validate() const {
    try {
        device.validate();
        chain.validate();
        mc.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (v_read < 0.0) throw ConfigError("config: v_read must be non-negative");
    if (array_rows == 0 || array_cols == 0)
        throw ConfigError("config: array dimensions must be positive");
    if (array_cols % 2 != 0)
        throw ConfigError("config: array.cols must be even");
    if (hdc.n_features == 0 || hdc.dim == 0)
        throw ConfigError("config: hdc dimensions must be positive");
    if (hdc.quant_bits < 1 || hdc.quant_bits > 16)
        throw ConfigError("config: hdc.quant_bits must be in [1, 16]");
    if (alloc.tile_rows == 0 || alloc.tile_cols == 0)
        throw ConfigError("config: alloc tile dimensions must be positive");
    if (alloc.tile_cols % 2 != 0)
        throw ConfigError("config: alloc.tile_cols must be even");
}

} // namespace tdcim
