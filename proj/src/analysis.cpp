#include "tdcim/analysis.hpp"

#include "tdcim/array.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace tdcim {

void MonteCarloSpec::validate() const {
    if (n_trials < 1) throw std::invalid_argument("MonteCarloSpec: n_trials must be positive");
    if (sigma_vth < 0.0)
        throw std::invalid_argument("MonteCarloSpec: sigma_vth must be non-negative");
    if (!(sense_margin >= 0.0))
        throw std::invalid_argument("MonteCarloSpec: sense_margin must be non-negative");
    for (double v : v_read_sweep)
        if (v < 0.0) throw std::invalid_argument("MonteCarloSpec: read voltages must be non-negative");
    for (std::size_t n : chain_lengths)
        if (n < 2 || n % 2 != 0)
            throw std::invalid_argument("MonteCarloSpec: chain lengths must be even and >= 2");
}

std::vector<double> MonteCarloSpec::default_v_read_sweep() {
    std::vector<double> v;
    for (int i = 0; i <= 30; ++i) v.push_back(0.1 * i);
    return v;
}

namespace {

CellVintSummary summarize(double v_read, bool match, const std::vector<double>& xs) {
    CellVintSummary s{v_read, match, 0.0, 0.0,
                      std::numeric_limits<double>::infinity(),
                      -std::numeric_limits<double>::infinity()};
    for (double x : xs) {
        s.mean += x;
        s.v_min = std::min(s.v_min, x);
        s.v_max = std::max(s.v_max, x);
    }
    s.mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stddev = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
    return s;
}

} // namespace

CellVintTable mc_cell_vint(const MonteCarloSpec& spec, const FeFetParams& device,
                           double vdd, VintSolver solver) {
    MonteCarloSpec s = spec;
    if (s.v_read_sweep.empty()) s.v_read_sweep = MonteCarloSpec::default_v_read_sweep();
    s.validate();

    FeFetParams params = device;
    params.sigma_vth = s.sigma_vth;

    CellVintTable table;
    table.samples.reserve(s.n_trials * s.v_read_sweep.size() * 2);

    // samples grouped per (v_read index, match) for the summary pass
    std::vector<std::vector<double>> match_vals(s.v_read_sweep.size());
    std::vector<std::vector<double>> mismatch_vals(s.v_read_sweep.size());

    for (std::size_t trial = 0; trial < s.n_trials; ++trial) {
        Rng rng = substream(s.seed, trial);
        XorAndCell cell(params, rng);
        cell.store(1, rng);
        for (std::size_t iv = 0; iv < s.v_read_sweep.size(); ++iv) {
            const double v_read = s.v_read_sweep[iv];
            for (bool match : {true, false}) {
                const Bit applied = match ? 1 : 0;
                const double v_int =
                    resolve_vint(cell, drive_for_search(applied, vdd, v_read), solver);
                table.samples.push_back(CellVintSample{v_read, match, trial, v_int});
                (match ? match_vals : mismatch_vals)[iv].push_back(v_int);
            }
        }
    }

    for (std::size_t iv = 0; iv < s.v_read_sweep.size(); ++iv) {
        table.summary.push_back(summarize(s.v_read_sweep[iv], true, match_vals[iv]));
        table.summary.push_back(summarize(s.v_read_sweep[iv], false, mismatch_vals[iv]));
    }
    return table;
}

ChainDelayStudy mc_chain_delay(const MonteCarloSpec& spec, const ChainConfig& base,
                               const FeFetParams& device, double vdd, double v_read) {
    MonteCarloSpec s = spec;
    if (s.v_read_sweep.empty()) s.v_read_sweep = MonteCarloSpec::default_v_read_sweep();
    s.validate();

    FeFetParams params = device;
    params.sigma_vth = s.sigma_vth;

    ChainDelayStudy study;
    for (std::size_t li = 0; li < s.chain_lengths.size(); ++li) {
        const std::size_t n = s.chain_lengths[li];
        ChainConfig cfg = base;
        cfg.n_stages = n;
        cfg.topology = ChainTopology::Inverter;
        cfg.validate();
        const std::uint64_t length_seed = splitmix64(s.seed ^ (0xC0FFEEULL + li));

        std::vector<std::vector<double>> per_count(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            for (std::size_t trial = 0; trial < s.n_trials; ++trial) {
                Rng rng = substream(length_seed, k * 1048576ULL + trial);

                // Stored word at random; query flips exactly k positions, so
                // the intended mismatch count is k.
                BitVec stored(n), query(n);
                for (std::size_t i = 0; i < n; ++i)
                    stored[i] = static_cast<Bit>((rng() >> 63) & 1);
                query = stored;
                std::vector<std::size_t> idx(n);
                for (std::size_t i = 0; i < n; ++i) idx[i] = i;
                for (std::size_t i = 0; i < k; ++i) {
                    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
                    std::swap(idx[i], idx[pick(rng)]);
                    query[idx[i]] ^= 1;
                }

                BitVec act(n);
                for (std::size_t i = 0; i < n; ++i) {
                    XorAndCell cell(params, rng);
                    cell.store(stored[i], rng);
                    act[i] = xor_output(cell, query[i], vdd, v_read);
                }
                const DelayResult d = analytical_delay_inverter(cfg, act);

                // Sensed count comes out of the same timing path, so the
                // recorded delay is the quantity the margin argument is about.
                study.samples.push_back(ChainDelaySample{n, k, trial, d.t_total});
                per_count[k].push_back(d.t_total);
            }
        }

        std::size_t separable = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const double lo_max = *std::max_element(per_count[k].begin(), per_count[k].end());
            const double hi_min = *std::min_element(per_count[k + 1].begin(), per_count[k + 1].end());
            const double sep = hi_min - lo_max;
            const bool ok = sep >= s.sense_margin;
            study.pairs.push_back(MarginPair{n, k, sep, ok});
            if (ok) ++separable;
        }
        study.pass_rate.emplace_back(n, static_cast<double>(separable) / static_cast<double>(n));
    }
    return study;
}

void DseSpec::validate() const {
    if (c_load_values.empty() || stage_counts.empty() || vdd_values.empty())
        throw std::invalid_argument("DseSpec: sweep lists must be non-empty");
    for (double c : c_load_values)
        if (!(c > 0.0)) throw std::invalid_argument("DseSpec: c_load values must be positive");
    for (std::size_t n : stage_counts)
        if (n < 1) throw std::invalid_argument("DseSpec: stage counts must be positive");
    for (double v : vdd_values)
        if (!(v > 0.0)) throw std::invalid_argument("DseSpec: vdd values must be positive");
}

DseSpec DseSpec::defaults() {
    DseSpec s;
    for (double c = 10e-15; c <= 1280e-15 * 1.0001; c *= 2.0) s.c_load_values.push_back(c);
    for (std::size_t n = 1; n <= 64; n *= 2) s.stage_counts.push_back(n);
    s.vdd_values = {0.5, 0.6, 0.7, 0.8, 0.9};
    return s;
}

namespace {

// Alpha-power supply scaling of stage drive, normalized to the base supply.
constexpr double kAlphaPower = 1.3;
constexpr double kLogicVth = 0.35; // V

double supply_delay_factor(double vdd, double vdd_ref) {
    const double num = vdd / std::pow(vdd - kLogicVth, kAlphaPower);
    const double den = vdd_ref / std::pow(vdd_ref - kLogicVth, kAlphaPower);
    return num / den;
}

} // namespace

DseResult dse_energy_delay(const DseSpec& spec, const ChainConfig& base) {
    spec.validate();
    for (double v : spec.vdd_values)
        if (v <= kLogicVth)
            throw std::invalid_argument("dse_energy_delay: vdd values must exceed the logic threshold");

    DseResult result;
    result.diagonal_max_rel_spread = 0.0;

    // groups keyed by (vdd index, c_load * n_stages) for the contour check
    std::map<std::pair<std::size_t, long long>, std::pair<double, double>> diag;

    for (std::size_t iv = 0; iv < spec.vdd_values.size(); ++iv) {
        const double vdd = spec.vdd_values[iv];
        const double scale = supply_delay_factor(vdd, base.vdd);
        for (double c_load : spec.c_load_values) {
            for (std::size_t n : spec.stage_counts) {
                ChainConfig cfg = base;
                cfg.n_stages = n;
                cfg.topology = ChainTopology::Buffer; // single-pass sweep; admits any length
                cfg.c_load = c_load;
                cfg.vdd = vdd;
                cfg.validate();

                const BitVec act(n, 1); // full activation
                const double e_stage = cfg.c_intrinsic * vdd * vdd;
                const double energy = energy_of(1, n, n, cfg, e_stage);
                const double activation_energy = static_cast<double>(n) * c_load * vdd * vdd;
                const double delay = analytical_delay_buffer(cfg, act).t_total * scale;
                const double tops =
                    efficiency_tops_per_watt(static_cast<double>(n), delay, energy);

                result.grid.push_back(
                    DsePoint{c_load, n, vdd, energy, activation_energy, delay, tops});

                const long long product =
                    std::llround(c_load * 1e18) * static_cast<long long>(n);
                auto [it, inserted] = diag.try_emplace(
                    std::make_pair(iv, product),
                    std::make_pair(activation_energy, activation_energy));
                if (!inserted) {
                    it->second.first = std::min(it->second.first, activation_energy);
                    it->second.second = std::max(it->second.second, activation_energy);
                }
            }
        }
    }

    for (const auto& [key, mm] : diag) {
        const double spread = (mm.second - mm.first) / mm.second;
        result.diagonal_max_rel_spread = std::max(result.diagonal_max_rel_spread, spread);
    }
    return result;
}

double efficiency_tops_per_watt(double ops_per_cycle, double cycle_time_s,
                                double energy_per_cycle_j) {
    if (!(ops_per_cycle > 0.0) || !(cycle_time_s > 0.0) || !(energy_per_cycle_j > 0.0))
        throw std::invalid_argument("efficiency_tops_per_watt: all inputs must be positive");
    // ops / cycle / (energy / cycle) = ops per joule; TOPS/W is the same thing
    // scaled by 1e12.
    return ops_per_cycle / energy_per_cycle_j / 1e12;
}

} // namespace tdcim
