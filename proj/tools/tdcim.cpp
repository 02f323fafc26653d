// Command line front end: runs the standard experiments and writes their
// tables under an output directory. Exit codes: 0 success, 1 bad usage or
// configuration, 2 an experiment's built-in consistency check failed.

#include "tdcim/alloc.hpp"
#include "tdcim/analysis.hpp"
#include "tdcim/array.hpp"
#include "tdcim/cell.hpp"
#include "tdcim/chain.hpp"
#include "tdcim/config.hpp"
#include "tdcim/csv.hpp"
#include "tdcim/device.hpp"
#include "tdcim/hdc.hpp"
#include "tdcim/types.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace tdcim;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;

struct GlobalOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed_override;
    std::string fidelity = "logical";
};

Fidelity parse_fidelity(const std::string& s) {
    if (s == "logical") return Fidelity::Logical;
    if (s == "divider") return Fidelity::Divider;
    if (s == "transient") return Fidelity::Transient;
    throw ConfigError("fidelity must be logical, divider or transient");
}

ExperimentConfig load_config(const GlobalOpts& g) {
    ExperimentConfig cfg;
    if (!g.config_path.empty()) cfg = ExperimentConfig::from_file(g.config_path);
    if (g.seed_override) {
        cfg.seed = *g.seed_override;
        cfg.mc.seed = *g.seed_override;
        cfg.hdc.seed = *g.seed_override;
    }
    return cfg;
}

fs::path ensure_out_dir(const GlobalOpts& g) {
    fs::path dir(g.out_dir);
    fs::create_directories(dir);
    return dir;
}

void write_resolved_config(const ExperimentConfig& cfg, const fs::path& dir) {
    std::ofstream out(dir / "resolved_config.json");
    out << cfg.to_json().dump(2) << "\n";
}

std::string fid_name(Fidelity f) {
    switch (f) {
        case Fidelity::Logical: return "logical";
        case Fidelity::Divider: return "divider";
        default: return "transient";
    }
}

// --- cell-table --------------------------------------------------------------

int run_cell_table(const GlobalOpts& g) {
    const ExperimentConfig cfg = load_config(g);
    const fs::path dir = ensure_out_dir(g);
    write_resolved_config(cfg, dir);

    const double vdd = cfg.chain.vdd;
    const double v_read = cfg.v_read;
    Rng rng = substream(cfg.seed, 0);

    FeFetParams quiet = cfg.device;
    quiet.sigma_vth = 0.0; // truth tables are a nominal-device statement

    bool ok = true;
    {
        CsvWriter csv((dir / "cell_truth.csv").string());
        csv.comment("vdd=" + CsvWriter::num(vdd) + " v_read=" + CsvWriter::num(v_read));
        csv.header({"op", "stored", "applied", "solver", "v_int", "logic"});
        for (const char* solver_name : {"rail", "fixed_point"}) {
            const VintSolver solver = std::string(solver_name) == "rail"
                                          ? VintSolver::RailReferenced
                                          : VintSolver::FixedPoint;
            for (int stored = 0; stored <= 1; ++stored) {
                for (int applied = 0; applied <= 1; ++applied) {
                    XorAndCell cell(quiet, rng);
                    cell.store(static_cast<Bit>(stored), rng);

                    const CellDrive ds =
                        drive_for_search(static_cast<Bit>(applied), vdd, v_read);
                    const double vx = resolve_vint(cell, ds, solver);
                    const Bit bx = logic_output(vx, vdd);
                    csv.row_of_strings({"xor", std::to_string(stored),
                                        std::to_string(applied), solver_name,
                                        CsvWriter::num(vx), std::to_string(int(bx))});
                    if (bx != static_cast<Bit>(stored ^ applied)) ok = false;

                    const CellDrive da =
                        drive_for_and(static_cast<Bit>(applied), vdd, v_read);
                    const double va = resolve_vint(cell, da, solver);
                    const Bit ba = logic_output(va, vdd);
                    csv.row_of_strings({"and", std::to_string(stored),
                                        std::to_string(applied), solver_name,
                                        CsvWriter::num(va), std::to_string(int(ba))});
                    if (ba != static_cast<Bit>(stored & applied)) ok = false;
                }
            }
        }
    }
    {
        // Read-voltage sweep of the stored-1 cell, both search drives.
        CsvWriter csv((dir / "cell_vint_sweep.csv").string());
        csv.comment("stored=1 solver=fixed_point vdd=" + CsvWriter::num(vdd));
        csv.header({"v_read", "v_int_match", "v_int_mismatch"});
        XorAndCell cell(quiet, rng);
        cell.store(1, rng);
        for (double v = 0.0; v <= 3.0 + 1e-9; v += 0.05) {
            const double vm = resolve_vint(cell, drive_for_search(1, vdd, v),
                                           VintSolver::FixedPoint);
            const double vx = resolve_vint(cell, drive_for_search(0, vdd, v),
                                           VintSolver::FixedPoint);
            csv.row_of_strings({CsvWriter::num(v), CsvWriter::num(vm), CsvWriter::num(vx)});
        }
    }
    if (!ok) {
        std::cerr << "cell-table: truth table mismatch\n";
        return kExitCheckFailed;
    }
    std::cout << "cell-table: wrote " << (dir / "cell_truth.csv").string() << "\n";
    return kExitOk;
}

// --- chain-sweep -------------------------------------------------------------

int run_chain_sweep(const GlobalOpts& g) {
    const ExperimentConfig cfg = load_config(g);
    const fs::path dir = ensure_out_dir(g);
    write_resolved_config(cfg, dir);

    const double unit = delay_per_load(cfg.chain);
    bool ok = true;

    CsvWriter csv((dir / "chain_sweep.csv").string());
    csv.comment("unit_delay=" + CsvWriter::num(unit));
    csv.header({"topology", "n_stages", "n_active", "t_rise_analytical",
                "t_fall_analytical", "t_total_analytical", "t_rise_transient",
                "t_fall_transient", "t_total_transient"});

    CsvWriter slopes((dir / "chain_slopes.csv").string());
    slopes.header({"topology", "n_stages", "slope_analytical", "slope_transient",
                   "unit_delay"});

    for (const ChainTopology topo : {ChainTopology::Buffer, ChainTopology::Inverter}) {
        const char* tname = topo == ChainTopology::Buffer ? "buffer" : "inverter";
        for (const std::size_t n : {std::size_t{16}, std::size_t{32}}) {
            ChainConfig cc = cfg.chain;
            cc.n_stages = n;
            cc.topology = topo;
            cc.validate();

            std::vector<double> xs, ya, yt;
            const std::size_t step = topo == ChainTopology::Inverter ? 2 : 1;
            for (std::size_t k = 0; k <= n; k += step) {
                BitVec act(n, 0);
                for (std::size_t i = 0; i < k; ++i) act[i] = 1;

                const DelayResult a = analytical_delay(cc, act);
                const double worst = 2.0 * n * (cc.t_intrinsic + unit);
                const double pulse = 1.25 * worst + 10.0 * cc.t_intrinsic;
                const DelayResult t =
                    transient_delays(cc, act, pulse, cc.t_intrinsic / 20.0);

                csv.row_of_strings({tname, CsvWriter::num(n), CsvWriter::num(k),
                                    CsvWriter::num(a.t_rise), CsvWriter::num(a.t_fall),
                                    CsvWriter::num(a.t_total), CsvWriter::num(t.t_rise),
                                    CsvWriter::num(t.t_fall), CsvWriter::num(t.t_total)});
                xs.push_back(static_cast<double>(k));
                ya.push_back(a.t_total);
                yt.push_back(t.t_total);
            }
            const double sa = linear_slope(xs, ya);
            const double st = linear_slope(xs, yt);
            slopes.row_of_strings({tname, CsvWriter::num(n), CsvWriter::num(sa),
                                   CsvWriter::num(st), CsvWriter::num(unit)});
            if (std::abs(sa - unit) > 1e-12 * unit) ok = false;
            if (std::abs(st - unit) > 0.05 * unit) ok = false;
        }
    }

    {
        // One recorded transient for plotting: 8 stages, alternating loads.
        ChainConfig cc = cfg.chain;
        cc.n_stages = 8;
        cc.topology = ChainTopology::Inverter;
        BitVec act{1, 0, 1, 0, 1, 0, 1, 0};
        const double worst = 2.0 * 8 * (cc.t_intrinsic + unit);
        const double pulse = 1.25 * worst + 10.0 * cc.t_intrinsic;
        const TransientResult tr =
            transient_simulate(cc, act, pulse, cc.t_intrinsic / 20.0, 4);
        CsvWriter wf((dir / "chain_waveform.csv").string());
        wf.comment("n_stages=8 topology=inverter act=10101010");
        std::vector<std::string> head{"t"};
        for (std::size_t s = 1; s <= 8; ++s) head.push_back("v_stage" + std::to_string(s));
        wf.header(head);
        for (std::size_t i = 0; i < tr.waveform.time.size(); ++i) {
            std::vector<std::string> row{CsvWriter::num(tr.waveform.time[i])};
            for (double v : tr.waveform.stage_v[i]) row.push_back(CsvWriter::num(v));
            wf.row_of_strings(row);
        }
    }

    if (!ok) {
        std::cerr << "chain-sweep: slope check failed\n";
        return kExitCheckFailed;
    }
    std::cout << "chain-sweep: wrote " << (dir / "chain_sweep.csv").string() << "\n";
    return kExitOk;
}

// --- montecarlo --------------------------------------------------------------

int run_montecarlo(const GlobalOpts& g) {
    const ExperimentConfig cfg = load_config(g);
    const fs::path dir = ensure_out_dir(g);
    write_resolved_config(cfg, dir);

    const CellVintTable cell_table =
        mc_cell_vint(cfg.mc, cfg.device, cfg.chain.vdd, cfg.array_op.solver);
    {
        CsvWriter csv((dir / "mc_cell_samples.csv").string());
        csv.comment("n_trials=" + CsvWriter::num(cfg.mc.n_trials) +
                    " sigma_vth=" + CsvWriter::num(cfg.mc.sigma_vth));
        csv.header({"v_read", "case", "trial", "v_int"});
        for (const CellVintSample& s : cell_table.samples)
            csv.row_of_strings({CsvWriter::num(s.v_read),
                                s.match ? "match" : "mismatch",
                                CsvWriter::num(s.trial), CsvWriter::num(s.v_int)});
    }
    {
        CsvWriter csv((dir / "mc_cell_summary.csv").string());
        csv.header({"v_read", "case", "mean", "stddev", "min", "max"});
        for (const CellVintSummary& s : cell_table.summary)
            csv.row_of_strings({CsvWriter::num(s.v_read),
                                s.match ? "match" : "mismatch", CsvWriter::num(s.mean),
                                CsvWriter::num(s.stddev), CsvWriter::num(s.v_min),
                                CsvWriter::num(s.v_max)});
    }

    const ChainDelayStudy study =
        mc_chain_delay(cfg.mc, cfg.chain, cfg.device, cfg.chain.vdd, cfg.v_read);
    {
        CsvWriter csv((dir / "mc_chain_pairs.csv").string());
        csv.comment("sense_margin=" + CsvWriter::num(cfg.mc.sense_margin));
        csv.header({"n_stages", "k", "separation", "separable"});
        for (const MarginPair& p : study.pairs)
            csv.row_of_strings({CsvWriter::num(p.n_stages), CsvWriter::num(p.k),
                                CsvWriter::num(p.separation),
                                std::to_string(int(p.separable))});
    }
    {
        CsvWriter csv((dir / "mc_chain_passrate.csv").string());
        csv.header({"n_stages", "pass_rate"});
        for (const auto& [n, rate] : study.pass_rate)
            csv.row_of_strings({CsvWriter::num(n), CsvWriter::num(rate)});
    }
    std::cout << "montecarlo: wrote " << (dir / "mc_cell_summary.csv").string()
              << " and chain margin tables\n";
    return kExitOk;
}

// --- dse ----------------------------------------------------------------------

int run_dse(const GlobalOpts& g) {
    const ExperimentConfig cfg = load_config(g);
    const fs::path dir = ensure_out_dir(g);
    write_resolved_config(cfg, dir);

    const DseResult res = dse_energy_delay(cfg.dse, cfg.chain);
    CsvWriter csv((dir / "dse_grid.csv").string());
    csv.comment("diagonal_max_rel_spread=" + CsvWriter::num(res.diagonal_max_rel_spread));
    csv.header({"c_load", "n_stages", "vdd", "energy", "activation_energy", "delay",
                "tops_per_watt"});
    for (const DsePoint& p : res.grid)
        csv.row_of_strings({CsvWriter::num(p.c_load), CsvWriter::num(p.n_stages),
                            CsvWriter::num(p.vdd), CsvWriter::num(p.energy_j),
                            CsvWriter::num(p.activation_energy_j),
                            CsvWriter::num(p.delay_s), CsvWriter::num(p.tops_per_watt)});

    if (res.diagonal_max_rel_spread > 0.01) {
        std::cerr << "dse: contour spread check failed\n";
        return kExitCheckFailed;
    }
    std::cout << "dse: wrote " << (dir / "dse_grid.csv").string() << "\n";
    return kExitOk;
}

// --- hdc ----------------------------------------------------------------------

Dataset dataset_from_config(const HdcConfig& h, bool train_half) {
    if (!h.dataset.empty()) {
        std::ifstream in(h.dataset);
        if (!in) throw ConfigError("hdc: cannot open dataset \"" + h.dataset + "\"");
        return load_dataset_csv(in);
    }
    // One generated set shares the class centers; the leading examples of
    // each class train, the rest test.
    const std::size_t per = h.train_per_class + h.test_per_class;
    const Dataset all =
        make_blobs(h.n_classes, per, h.n_features, h.seed, 1.0, h.blob_noise);
    Dataset out;
    out.n_features = all.n_features;
    for (std::size_t cls = 0; cls < h.n_classes; ++cls) {
        const std::size_t base = cls * per;
        const std::size_t lo = train_half ? 0 : h.train_per_class;
        const std::size_t hi = train_half ? h.train_per_class : per;
        for (std::size_t i = lo; i < hi; ++i) {
            out.features.push_back(all.features[base + i]);
            out.labels.push_back(all.labels[base + i]);
        }
    }
    return out;
}

std::unique_ptr<FabricBackend> fabric_from_config(const ExperimentConfig& cfg,
                                                  Fidelity fidelity) {
    FeFetParams quiet = cfg.device;
    quiet.sigma_vth = 0.0; // classification fidelity study, not variation study
    ChainConfig chain = cfg.chain;
    chain.n_stages = cfg.alloc.tile_cols;
    return std::make_unique<FabricBackend>(quiet, chain, cfg.alloc.tile_rows,
                                           cfg.alloc.tile_cols, cfg.array_op,
                                           fidelity, cfg.seed);
}

int run_hdc_train(const GlobalOpts& g) {
    const ExperimentConfig cfg = load_config(g);
    const fs::path dir = ensure_out_dir(g);
    write_resolved_config(cfg, dir);

    const Dataset train = dataset_from_config(cfg.hdc, true);
    std::unique_ptr<FabricBackend> fabric;
    if (cfg.hdc.backend == "fabric")
        fabric = fabric_from_config(cfg, parse_fidelity(g.fidelity));

    const HdcModel model = HdcModel::train(train, cfg.hdc.dim, cfg.hdc.quant_bits,
                                           cfg.hdc.seed, fabric.get());
    std::ofstream out(dir / "model.json");
    out << model.to_json().dump(2) << "\n";
    std::cout << "hdc train: " << train.size() << " examples, "
              << model.labels().size() << " classes -> "
              << (dir / "model.json").string() << "\n";
    return kExitOk;
}

int run_hdc_infer(const GlobalOpts& g, const std::string& model_path) {
    const ExperimentConfig cfg = load_config(g);
    const fs::path dir = ensure_out_dir(g);
    write_resolved_config(cfg, dir);

    std::ifstream min(model_path);
    if (!min) throw ConfigError("hdc: cannot open model \"" + model_path + "\"");
    json mj;
    min >> mj;
    const HdcModel model = HdcModel::from_json(mj);

    const Dataset test = dataset_from_config(cfg.hdc, false);
    std::unique_ptr<FabricBackend> fabric;
    if (cfg.hdc.backend == "fabric")
        fabric = fabric_from_config(cfg, parse_fidelity(g.fidelity));

    std::size_t correct = 0;
    CsvWriter csv((dir / "predictions.csv").string());
    csv.header({"example", "label", "predicted", "similarity"});
    for (std::size_t e = 0; e < test.size(); ++e) {
        const Prediction p = model.infer(test.features[e], fabric.get());
        if (p.label == test.labels[e]) ++correct;
        csv.row_of_strings({CsvWriter::num(e), std::to_string(test.labels[e]),
                            std::to_string(p.label),
                            std::to_string(p.similarity[p.class_index])});
    }
    const double acc = test.size() ? double(correct) / double(test.size()) : 0.0;
    std::ofstream sum(dir / "accuracy.json");
    json aj{{"n_examples", test.size()}, {"n_correct", correct}, {"accuracy", acc}};
    sum << aj.dump(2) << "\n";
    std::cout << "hdc infer: accuracy " << acc << " over " << test.size()
              << " examples\n";
    return kExitOk;
}

int run_hdc_benchmark(const GlobalOpts& g) {
    const ExperimentConfig cfg = load_config(g);
    const fs::path dir = ensure_out_dir(g);
    write_resolved_config(cfg, dir);

    const Dataset train = dataset_from_config(cfg.hdc, true);
    const Dataset test = dataset_from_config(cfg.hdc, false);

    const Fidelity fidelity = parse_fidelity(g.fidelity);
    std::unique_ptr<FabricBackend> fabric;
    if (cfg.hdc.backend == "fabric") fabric = fabric_from_config(cfg, fidelity);

    const HdcModel model = HdcModel::train(train, cfg.hdc.dim, cfg.hdc.quant_bits,
                                           cfg.hdc.seed, fabric.get());
    std::size_t correct = 0;
    for (std::size_t e = 0; e < test.size(); ++e) {
        const Prediction p = model.infer(test.features[e], fabric.get());
        if (p.label == test.labels[e]) ++correct;
    }
    const double acc = test.size() ? double(correct) / double(test.size()) : 0.0;

    // Per-op costs from one representative op of each kind on a tile.
    std::unique_ptr<FabricBackend> probe =
        fabric ? nullptr : fabric_from_config(cfg, fidelity);
    FabricBackend& fb = fabric ? *fabric : *probe;
    const OpReceipt rm = fb.representative_mac();
    const OpReceipt rc = fb.representative_cam();
    const PhaseCost mac_cost{rm.energy_j, rm.latency_s};
    const PhaseCost cam_cost{rc.energy_j, rc.latency_s};

    const WorkloadProfile profile = profile_task(
        model, test.size(), cfg.alloc.tile_rows, cfg.alloc.tile_cols, mac_cost, cam_cost);

    TilePool pool;
    pool.n_tiles = cfg.alloc.n_tiles;
    pool.tile_rows = cfg.alloc.tile_rows;
    pool.tile_cols = cfg.alloc.tile_cols;
    pool = allocate(pool, profile);

    const double write_energy_per_tile =
        double(cfg.alloc.tile_rows) * double(cfg.alloc.tile_cols) *
        cfg.array_op.e_write_per_cell;
    const AllocationReport rep = account(pool, profile, write_energy_per_tile);

    json rj;
    rj["accuracy"] = acc;
    rj["n_train"] = train.size();
    rj["n_test"] = test.size();
    rj["backend"] = cfg.hdc.backend;
    rj["fidelity"] = fid_name(fidelity);
    rj["profile"] = {{"mac_ops", profile.mac_ops},
                     {"cam_ops", profile.cam_ops},
                     {"mac_energy_per_op", profile.mac_cost.energy_j},
                     {"cam_energy_per_op", profile.cam_cost.energy_j},
                     {"mac_latency_per_op", profile.mac_cost.latency_s},
                     {"cam_latency_per_op", profile.cam_cost.latency_s}};
    rj["allocation"] = {{"n_tiles", pool.n_tiles},
                        {"tiles_mac", rep.tiles_mac},
                        {"tiles_cam", rep.tiles_cam}};
    rj["totals"] = {{"energy_mac", rep.energy_mac_j},
                    {"energy_cam", rep.energy_cam_j},
                    {"energy_write", rep.energy_write_j},
                    {"latency_mac", rep.latency_mac_s},
                    {"latency_cam", rep.latency_cam_s},
                    {"latency_total", rep.latency_total_s}};
    rj["percent"] = {{"energy_mac", rep.pct_energy_mac},
                     {"energy_cam", rep.pct_energy_cam},
                     {"latency_mac", rep.pct_latency_mac},
                     {"latency_cam", rep.pct_latency_cam}};
    std::ofstream out(dir / "report.json");
    out << rj.dump(2) << "\n";

    CsvWriter csv((dir / "breakdown.csv").string());
    csv.header({"phase", "tiles", "ops", "energy", "latency", "pct_energy",
                "pct_latency"});
    csv.row_of_strings({"mac", CsvWriter::num(rep.tiles_mac),
                        std::to_string(profile.mac_ops), CsvWriter::num(rep.energy_mac_j),
                        CsvWriter::num(rep.latency_mac_s), CsvWriter::num(rep.pct_energy_mac),
                        CsvWriter::num(rep.pct_latency_mac)});
    csv.row_of_strings({"cam", CsvWriter::num(rep.tiles_cam),
                        std::to_string(profile.cam_ops), CsvWriter::num(rep.energy_cam_j),
                        CsvWriter::num(rep.latency_cam_s), CsvWriter::num(rep.pct_energy_cam),
                        CsvWriter::num(rep.pct_latency_cam)});

    const double pct_sum_e = rep.pct_energy_mac + rep.pct_energy_cam;
    const double pct_sum_l = rep.pct_latency_mac + rep.pct_latency_cam;
    if (std::abs(pct_sum_e - 100.0) > 0.01 || std::abs(pct_sum_l - 100.0) > 0.01) {
        std::cerr << "hdc benchmark: percentage breakdown does not close\n";
        return kExitCheckFailed;
    }
    std::cout << "hdc benchmark: accuracy " << acc << ", tiles mac/cam "
              << rep.tiles_mac << "/" << rep.tiles_cam << " -> "
              << (dir / "report.json").string() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-domain compute-in-memory simulator"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand name

    GlobalOpts g;
    app.add_option("--config", g.config_path, "JSON configuration file");
    app.add_option("--out", g.out_dir, "output directory (created if missing)");
    std::uint64_t seed_val = 0;
    CLI::Option* seed_opt =
        app.add_option("--seed", seed_val, "override every configured seed");
    app.add_option("--fidelity", g.fidelity,
                   "cell evaluation fidelity: logical, divider, transient")
        ->check(CLI::IsMember({"logical", "divider", "transient"}));

    CLI::App* cell = app.add_subcommand("cell-table", "single-cell truth tables and sweep");
    CLI::App* chain = app.add_subcommand("chain-sweep", "delay chain linearity study");
    CLI::App* mc = app.add_subcommand("montecarlo", "variation studies (cell and chain)");
    CLI::App* dse = app.add_subcommand("dse", "energy/delay design space sweep");
    CLI::App* hdc = app.add_subcommand("hdc", "hyperdimensional classifier workload");
    hdc->require_subcommand(1);
    CLI::App* hdc_train = hdc->add_subcommand("train", "fit a model, write model.json");
    std::string model_path = "out/model.json";
    CLI::App* hdc_infer = hdc->add_subcommand("infer", "classify the test set");
    hdc_infer->add_option("--model", model_path, "model.json produced by train");
    CLI::App* hdc_bench =
        hdc->add_subcommand("benchmark", "train, test and cost/allocation report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }
    if (*seed_opt) g.seed_override = seed_val;

    try {
        if (cell->parsed()) return run_cell_table(g);
        if (chain->parsed()) return run_chain_sweep(g);
        if (mc->parsed()) return run_montecarlo(g);
        if (dse->parsed()) return run_dse(g);
        if (hdc->parsed()) {
            if (hdc_train->parsed()) return run_hdc_train(g);
            if (hdc_infer->parsed()) return run_hdc_infer(g, model_path);
            if (hdc_bench->parsed()) return run_hdc_benchmark(g);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}
