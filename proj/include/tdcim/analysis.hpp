#pragma once

#include "tdcim/cell.hpp"
#include "tdcim/chain.hpp"
#include "tdcim/device.hpp"
#include "tdcim/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace tdcim {

struct MonteCarloSpec {
    std::size_t n_trials = 60;
    double sigma_vth = 0.12;                      // V
    std::vector<double> v_read_sweep;             // defaults to 0..3 V, 0.1 V steps
    std::vector<std::size_t> chain_lengths{32, 64, 128};
    double sense_margin = 1e-10;                  // s
    std::uint64_t seed = 1;

    void validate() const;
    static std::vector<double> default_v_read_sweep();
};

// --- internal node voltage under threshold variation -----------------------

struct CellVintSample {
    double v_read;
    bool match;       // true: applied bit equals stored; false: opposite
    std::size_t trial;
    double v_int;
};

struct CellVintSummary {
    double v_read;
    bool match;
    double mean, stddev, v_min, v_max;
};

struct CellVintTable {
    std::vector<CellVintSample> samples;
    std::vector<CellVintSummary> summary;
};

// Per trial: re-store a cell (fresh threshold samples), then sweep the read
// voltage recording the node voltage for the matching and mismatching drive.
CellVintTable mc_cell_vint(const MonteCarloSpec& spec, const FeFetParams& device,
                           double vdd, VintSolver solver = VintSolver::FixedPoint);

// --- chain delay margins under threshold variation --------------------------

struct ChainDelaySample {
    std::size_t n_stages;
    std::size_t n_active; // intended activation count
    std::size_t trial;
    double t_total;
};

struct MarginPair {
    std::size_t n_stages;
    std::size_t k;      // pair (k, k+1)
    double separation;  // min(t | k+1) - max(t | k)
    bool separable;     // separation >= sense_margin
};

struct ChainDelayStudy {
    std::vector<ChainDelaySample> samples;
    std::vector<MarginPair> pairs;
    std::vector<std::pair<std::size_t, double>> pass_rate; // per chain length
};

// Per (length, count, trial): store a random word, apply a query at Hamming
// distance k, derive activations through the divider, time the chain. A pair
// of adjacent counts is separable when the empirical envelopes stay a full
// sense margin apart.
ChainDelayStudy mc_chain_delay(const MonteCarloSpec& spec, const ChainConfig& base,
                               const FeFetParams& device, double vdd, double v_read);

// --- energy/delay design space ----------------------------------------------

struct DseSpec {
    std::vector<double> c_load_values;      // F; defaults to 10..1280 fF, doubling
    std::vector<std::size_t> stage_counts;  // defaults to 1..64, doubling
    std::vector<double> vdd_values;         // V; defaults to 0.5..0.9

    void validate() const;
    static DseSpec defaults();
};

struct DsePoint {
    double c_load;
    std::size_t n_stages;
    double vdd;
    double energy_j;            // full-activation chain energy
    double activation_energy_j; // load-charging term alone
    double delay_s;             // full-activation single-pass delay
    double tops_per_watt;
};

struct DseResult {
    std::vector<DsePoint> grid;
    // Largest relative spread of the activation energy among grid points that
    // share the same c_load * n_stages product (per vdd). Zero up to rounding.
    double diagonal_max_rel_spread;
};

// Sweeps load, length and supply. Delay scales with supply by the alpha-power
// law t ~ vdd / (vdd - vth)^alpha with alpha = 1.3, vth = 0.35 V.
DseResult dse_energy_delay(const DseSpec& spec, const ChainConfig& base);

// ops per cycle / (energy per cycle) expressed in TOPS/W.
double efficiency_tops_per_watt(double ops_per_cycle, double cycle_time_s,
                                double energy_per_cycle_j);

} // namespace tdcim
