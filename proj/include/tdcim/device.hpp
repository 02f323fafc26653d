#pragma once

#include "tdcim/types.hpp"

namespace tdcim {

// Compact model of one ferroelectric FET used as a nonvolatile switch.
// A program pulse leaves the device in one of two threshold states; the
// channel conductance follows a logistic turn-on curve around the threshold
// that was sampled when the state was last written.

enum class VthState { LowVth, HighVth };
enum class WritePolarity { Set, Reset }; // Set -> LowVth, Reset -> HighVth

struct FeFetParams {
    double vth_low = -0.5;    // V, mean threshold of the low-VTH state
    double vth_high = 1.5;    // V, mean threshold of the high-VTH state
    double g_on = 1e-4;       // S, fully turned-on channel conductance
    double g_leak = 1e-10;    // S, off-state leakage floor
    double v_slope = 0.05;    // V, logistic transition width
    double sigma_vth = 0.05;  // V, std dev of threshold variation per write

    void validate() const; // throws std::invalid_argument on nonsense values
};

class FeFetDevice {
public:
    explicit FeFetDevice(const FeFetParams& params);

    // Programs the state and re-samples the effective threshold. Writing the
    // same polarity again still re-samples: every pulse re-rolls variation.
    void write(WritePolarity polarity, Rng& rng);

    // Channel conductance for a given gate-to-source voltage. Monotone in
    // v_gs, bounded between g_leak and g_on.
    double conductance(double v_gs) const;

    VthState state() const { return state_; }
    double vth_effective() const { return vth_effective_; }
    const FeFetParams& params() const { return params_; }

private:
    FeFetParams params_;
    VthState state_ = VthState::HighVth;
    double vth_effective_;
};

} // namespace tdcim
