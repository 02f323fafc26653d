#pragma once

#include "tdcim/hdc.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tdcim {

// Planning layer: given an HDC task, how many array tiles should serve MAC
// (encode) duty and how many CAM (lookup) duty. Pure arithmetic on op counts
// and per-op cost probes; nothing here touches device state.

enum class TileDuty { Mac, Cam, Idle };

struct PhaseCost {
    double energy_j = 0.0;  // per op
    double latency_s = 0.0; // per op
};

struct TilePool {
    std::size_t n_tiles = 0;
    std::size_t tile_rows = 32;
    std::size_t tile_cols = 32;
    std::vector<TileDuty> assignment; // filled by allocate()
};

struct WorkloadProfile {
    std::uint64_t mac_ops = 0;
    std::uint64_t cam_ops = 0;
    PhaseCost mac_cost;
    PhaseCost cam_cost;
};

// Op counts for one task: every query takes one MAC pass per quantization
// bit-plane per tile chunk of the base, and one CAM pass per tile chunk of
// the prototype table.
WorkloadProfile profile_task(std::size_t n_features, std::size_t dim, std::size_t n_classes,
                             std::size_t n_queries, unsigned quant_bits,
                             std::size_t tile_rows, std::size_t tile_cols,
                             const PhaseCost& mac_cost, const PhaseCost& cam_cost);

WorkloadProfile profile_task(const HdcModel& model, std::size_t n_queries,
                             std::size_t tile_rows, std::size_t tile_cols,
                             const PhaseCost& mac_cost, const PhaseCost& cam_cost);

enum class AllocPolicy {
    // Exhaustive integer split minimizing the slower side's serial latency.
    ProportionalLatency
};

// Fills pool.assignment. Each side with demand gets at least one tile; a
// one-sided workload takes the whole pool; an empty workload idles it.
// Requires n_tiles >= 2 when both sides have demand.
TilePool allocate(TilePool pool, const WorkloadProfile& profile,
                  AllocPolicy policy = AllocPolicy::ProportionalLatency);

struct AllocationReport {
    std::size_t tiles_mac = 0;
    std::size_t tiles_cam = 0;
    double energy_mac_j = 0.0;
    double energy_cam_j = 0.0;
    double energy_write_j = 0.0; // reprogramming the assigned tiles for this task
    double latency_mac_s = 0.0;  // serial rounds on the MAC tiles
    double latency_cam_s = 0.0;
    double latency_total_s = 0.0; // sides run on disjoint tiles, so the max
    double pct_energy_mac = 0.0;  // share of compute energy (mac + cam)
    double pct_energy_cam = 0.0;
    double pct_latency_mac = 0.0;
    double pct_latency_cam = 0.0;
};

// Totals are plain sums of the per-op costs; latency assumes each side spreads
// its ops evenly over its tiles in ceil(ops/tiles) rounds.
AllocationReport account(const TilePool& pool, const WorkloadProfile& profile,
                         double write_energy_per_tile);

} // namespace tdcim
