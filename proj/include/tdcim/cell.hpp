#pragma once

#include "tdcim/device.hpp"
#include "tdcim/types.hpp"

namespace tdcim {

// Two FeFETs in series between the SL and SLbar rails form one storage cell.
// The internal node between them is a conductance divider; with the right
// rail drive the node voltage evaluates XOR (search) or AND (multiply)
// between the stored bit and the applied bit.

enum class VintSolver {
    RailReferenced, // gate overdrive taken against each device's rail terminal
    FixedPoint      // self-consistent: source terminal is the lower of rail and V_int
};

struct CellDrive {
    double v_sl;    // V on the SL rail (top device side)
    double v_slbar; // V on the SLbar rail (bottom device side)
    double v_read;  // V on both gates
};

class XorAndCell {
public:
    // Fresh cells store 0. Both devices are programmed (and their thresholds
    // sampled) immediately.
    XorAndCell(const FeFetParams& params, Rng& rng);

    // stored 1 -> top LowVth / bottom HighVth; stored 0 -> the complement.
    // Each store rewrites both devices and re-samples their thresholds.
    void store(Bit bit, Rng& rng);

    Bit stored_bit() const { return stored_; }
    const FeFetDevice& top() const { return top_; }
    const FeFetDevice& bottom() const { return bottom_; }

private:
    FeFetDevice top_;
    FeFetDevice bottom_;
    Bit stored_ = 0;
};

// Rail patterns. Search drives the rails complementarily so a mismatch pulls
// the node high; multiply gates the stored bit with the input bit.
CellDrive drive_for_search(Bit search_bit, double vdd, double v_read);
CellDrive drive_for_and(Bit input_bit, double vdd, double v_read);

// Steady-state divider: V_int = (G_top*v_sl + G_bottom*v_slbar) / (G_top + G_bottom).
double divider_vint(double g_top, double g_bottom, double v_sl, double v_slbar);

// Internal node voltage for a driven cell. The FixedPoint solver iterates the
// divider with the node as a candidate source terminal and throws
// std::runtime_error if it fails to settle within 1 mV in 100 iterations.
double resolve_vint(const XorAndCell& cell, const CellDrive& drive,
                    VintSolver solver = VintSolver::RailReferenced);

// Ideal sense: 1 iff v_int is strictly above the threshold (default VDD/2).
Bit logic_output(double v_int, double vdd);
Bit logic_output_at(double v_int, double v_threshold);

// Convenience wrappers: drive, resolve, threshold.
Bit xor_output(const XorAndCell& cell, Bit search_bit, double vdd, double v_read,
               VintSolver solver = VintSolver::RailReferenced);
Bit and_output(const XorAndCell& cell, Bit input_bit, double vdd, double v_read,
               VintSolver solver = VintSolver::RailReferenced);

} // namespace tdcim
