#include "tdcim/cell.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tdcim {

XorAndCell::XorAndCell(const FeFetParams& params, Rng& rng)
    : top_(params), bottom_(params) {
    store(0, rng);
}

void XorAndCell::store(Bit bit, Rng& rng) {
    stored_ = bit ? 1 : 0;
    top_.write(stored_ ? WritePolarity::Set : WritePolarity::Reset, rng);
    bottom_.write(stored_ ? WritePolarity::Reset : WritePolarity::Set, rng);
}

CellDrive drive_for_search(Bit search_bit, double vdd, double v_read) {
    // search 0: SL=VDD, SLbar=0; search 1: SL=0, SLbar=VDD.
    if (search_bit) return CellDrive{0.0, vdd, v_read};
    return CellDrive{vdd, 0.0, v_read};
}

CellDrive drive_for_and(Bit input_bit, double vdd, double v_read) {
    // SL carries the input, SLbar stays grounded.
    return CellDrive{input_bit ? vdd : 0.0, 0.0, v_read};
}

double divider_vint(double g_top, double g_bottom, double v_sl, double v_slbar) {
    return (g_top * v_sl + g_bottom * v_slbar) / (g_top + g_bottom);
}

namespace {

void check_drive(const CellDrive& d) {
    if (!(d.v_sl >= 0.0) || !(d.v_slbar >= 0.0) || !(d.v_read >= 0.0))
        throw std::invalid_argument("CellDrive: rail and gate voltages must be non-negative");
}

double rail_referenced_vint(const XorAndCell& cell, const CellDrive& d) {
    const double g_top = cell.top().conductance(d.v_read - d.v_sl);
    const double g_bottom = cell.bottom().conductance(d.v_read - d.v_slbar);
    return divider_vint(g_top, g_bottom, d.v_sl, d.v_slbar);
}

double fixed_point_vint(const XorAndCell& cell, const CellDrive& d) {
    // Each device conducts relative to its source, which is whichever of its
    // two terminals (rail or internal node) sits lower. Starting from the
    // rail-referenced estimate, relax the divider until it is self-consistent.
    // Under-relaxation kicks in progressively; an oscillating map (e.g. a
    // near-step transition crossing the divider mid-range) runs out of the
    // iteration budget and is reported instead of silently returned.
    constexpr double kTolerance = 1e-3; // V
    constexpr int kMaxIterations = 100;

    double v = rail_referenced_vint(cell, d);
    double relax = 1.0;
    for (int i = 0; i < kMaxIterations; ++i) {
        const double g_top = cell.top().conductance(d.v_read - std::min(d.v_sl, v));
        const double g_bottom = cell.bottom().conductance(d.v_read - std::min(d.v_slbar, v));
        const double next = divider_vint(g_top, g_bottom, d.v_sl, d.v_slbar);
        if (std::abs(next - v) < kTolerance) return next;
        if (i == 12) relax = 0.5;
        if (i == 40) relax = 0.25;
        if (i == 70) relax = 0.125;
        v += relax * (next - v);
    }
    throw std::runtime_error("resolve_vint: fixed-point iteration did not settle within 1 mV");
}

} // namespace

double resolve_vint(const XorAndCell& cell, const CellDrive& drive, VintSolver solver) {
    check_drive(drive);
    if (solver == VintSolver::RailReferenced) return rail_referenced_vint(cell, drive);
    return fixed_point_vint(cell, drive);
}

Bit logic_output(double v_int, double vdd) { return logic_output_at(v_int, 0.5 * vdd); }

Bit logic_output_at(double v_int, double v_threshold) {
    return v_int > v_threshold ? 1 : 0;
}

Bit xor_output(const XorAndCell& cell, Bit search_bit, double vdd, double v_read,
               VintSolver solver) {
    const double v = resolve_vint(cell, drive_for_search(search_bit, vdd, v_read), solver);
    return logic_output(v, vdd);
}

Bit and_output(const XorAndCell& cell, Bit input_bit, double vdd, double v_read,
               VintSolver solver) {
    const double v = resolve_vint(cell, drive_for_and(input_bit, vdd, v_read), solver);
    return logic_output(v, vdd);
}

} // namespace tdcim
