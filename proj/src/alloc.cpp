#include "tdcim/alloc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tdcim {

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

} // namespace

WorkloadProfile profile_task(std::size_t n_features, std::size_t dim, std::size_t n_classes,
                             std::size_t n_queries, unsigned quant_bits,
                             std::size_t tile_rows, std::size_t tile_cols,
                             const PhaseCost& mac_cost, const PhaseCost& cam_cost) {
    if (n_features < 1 || dim < 1 || n_classes < 1)
        throw std::invalid_argument("profile_task: model dimensions must be positive");
    if (tile_rows < 1 || tile_cols < 1)
        throw std::invalid_argument("profile_task: tile shape must be positive");
    WorkloadProfile p;
    p.mac_ops = static_cast<std::uint64_t>(n_queries) * quant_bits *
                ceil_div(dim, tile_cols) * ceil_div(n_features, tile_rows);
    p.cam_ops = static_cast<std::uint64_t>(n_queries) *
                ceil_div(n_classes, tile_rows) * ceil_div(dim, tile_cols);
    p.mac_cost = mac_cost;
    p.cam_cost = cam_cost;
    return p;
}

WorkloadProfile profile_task(const HdcModel& model, std::size_t n_queries,
                             std::size_t tile_rows, std::size_t tile_cols,
                             const PhaseCost& mac_cost, const PhaseCost& cam_cost) {
    return profile_task(model.n_features(), model.dim(), model.labels().size(), n_queries,
                        model.quant_bits(), tile_rows, tile_cols, mac_cost, cam_cost);
}

namespace {

double side_latency(std::uint64_t ops, std::size_t tiles, double per_op) {
    if (ops == 0) return 0.0;
    return static_cast<double>(ceil_div(ops, tiles)) * per_op;
}

} // namespace

TilePool allocate(TilePool pool, const WorkloadProfile& profile, AllocPolicy policy) {
    if (policy != AllocPolicy::ProportionalLatency)
        throw std::invalid_argument("allocate: unknown policy");
    if (pool.n_tiles < 1) throw std::invalid_argument("allocate: empty tile pool");

    pool.assignment.assign(pool.n_tiles, TileDuty::Idle);
    const bool mac_demand = profile.mac_ops > 0;
    const bool cam_demand = profile.cam_ops > 0;
    if (!mac_demand && !cam_demand) return pool;

    std::size_t n_mac = 0;
    if (mac_demand && !cam_demand) {
        n_mac = pool.n_tiles;
    } else if (!mac_demand && cam_demand) {
        n_mac = 0;
    } else {
        if (pool.n_tiles < 2)
            throw std::invalid_argument("allocate: two-sided workload needs at least two tiles");
        // Exhaustive over integer splits; each side keeps at least one tile.
        double best = -1.0;
        for (std::size_t m = 1; m + 1 <= pool.n_tiles; ++m) {
            const double cost = std::max(
                side_latency(profile.mac_ops, m, profile.mac_cost.latency_s),
                side_latency(profile.cam_ops, pool.n_tiles - m, profile.cam_cost.latency_s));
            if (best < 0.0 || cost < best) {
                best = cost;
                n_mac = m;
            }
        }
    }

    for (std::size_t i = 0; i < pool.n_tiles; ++i) {
        if (i < n_mac)
            pool.assignment[i] = TileDuty::Mac;
        else if (cam_demand)
            pool.assignment[i] = TileDuty::Cam;
        else
            pool.assignment[i] = TileDuty::Idle;
    }
    // One-sided CAM workloads take the whole pool.
    if (!mac_demand && cam_demand)
        std::fill(pool.assignment.begin(), pool.assignment.end(), TileDuty::Cam);
    return pool;
}

AllocationReport account(const TilePool& pool, const WorkloadProfile& profile,
                         double write_energy_per_tile) {
    if (pool.assignment.size() != pool.n_tiles)
        throw std::invalid_argument("account: pool has no allocation");
    if (write_energy_per_tile < 0.0)
        throw std::invalid_argument("account: write energy must be non-negative");

    AllocationReport r;
    std::size_t busy = 0;
    for (TileDuty d : pool.assignment) {
        if (d == TileDuty::Mac) ++r.tiles_mac;
        if (d == TileDuty::Cam) ++r.tiles_cam;
        if (d != TileDuty::Idle) ++busy;
    }
    if (profile.mac_ops > 0 && r.tiles_mac == 0)
        throw std::invalid_argument("account: MAC demand but no MAC tiles");
    if (profile.cam_ops > 0 && r.tiles_cam == 0)
        throw std::invalid_argument("account: CAM demand but no CAM tiles");

    // Summed per op, exactly the total of the individual op receipts.
    for (std::uint64_t i = 0; i < profile.mac_ops; ++i)
        r.energy_mac_j += profile.mac_cost.energy_j;
    for (std::uint64_t i = 0; i < profile.cam_ops; ++i)
        r.energy_cam_j += profile.cam_cost.energy_j;
    r.energy_write_j = static_cast<double>(busy) * write_energy_per_tile;

    r.latency_mac_s = side_latency(profile.mac_ops, std::max<std::size_t>(r.tiles_mac, 1),
                                   profile.mac_cost.latency_s);
    r.latency_cam_s = side_latency(profile.cam_ops, std::max<std::size_t>(r.tiles_cam, 1),
                                   profile.cam_cost.latency_s);
    r.latency_total_s = std::max(r.latency_mac_s, r.latency_cam_s);

    const double compute_energy = r.energy_mac_j + r.energy_cam_j;
    if (compute_energy > 0.0) {
        r.pct_energy_mac = 100.0 * r.energy_mac_j / compute_energy;
        r.pct_energy_cam = 100.0 * r.energy_cam_j / compute_energy;
    }
    const double total_latency = r.latency_mac_s + r.latency_cam_s;
    if (total_latency > 0.0) {
        r.pct_latency_mac = 100.0 * r.latency_mac_s / total_latency;
        r.pct_latency_cam = 100.0 * r.latency_cam_s / total_latency;
    }
    return r;
}

} // namespace tdcim
