#pragma once

#include "tdcim/types.hpp"

#include <cstddef>
#include <vector>

namespace tdcim {

// Delay-chain model. Each cell that outputs 1 hangs an extra load capacitor
// on its stage, so a propagating edge arrives later by one calibrated unit
// delay per activated stage. Counting unit delays in the arrival time reads
// out a population count.
//
// Stage numbering starts at 1 for the first stage after the input. Inverter
// chains are operated in two phases: the rising edge is timed against the
// even-numbered stages (phase I) and the falling edge against the
// odd-numbered stages (phase II).

enum class ChainTopology { Buffer, Inverter };

struct ChainConfig {
    std::size_t n_stages = 32;
    ChainTopology topology = ChainTopology::Inverter;
    double t_intrinsic = 1e-11;            // s, unloaded per-stage delay
    double c_load = 9e-15;                 // F, switchable load per stage
    double c_intrinsic = 1.4426950408889634e-15; // F, calibrated to t_intrinsic
    double r_drive = 1e4;                  // ohm, stage output resistance
    double vdd = 0.9;                      // V

    void validate() const; // throws std::invalid_argument

    // c_intrinsic that makes the transient engine's unloaded stage delay
    // equal t_intrinsic: t = ln2 * r_drive * c_intrinsic.
    static double calibrated_c_intrinsic(double t_intrinsic, double r_drive);
};

struct DelayResult {
    double t_rise;  // s
    double t_fall;  // s
    double t_total; // s; rise + fall for inverters, single-edge for buffers
};

// Added delay per activated stage: ln2 * r_drive * c_load.
double delay_per_load(const ChainConfig& config);

// Activated-stage tallies by stage parity (stage 1 is odd).
std::size_t even_stage_count(const BitVec& act);
std::size_t odd_stage_count(const BitVec& act);

// Closed-form delays. act.size() must equal n_stages; inverter chains also
// require an even stage count so the output polarity matches the input.
DelayResult analytical_delay_buffer(const ChainConfig& config, const BitVec& act);
DelayResult analytical_delay_inverter(const ChainConfig& config, const BitVec& act);
DelayResult analytical_delay(const ChainConfig& config, const BitVec& act);

// Inverse of the delay model: how many loads explain a measured edge delay.
// Rounded to the nearest count and clamped to [0, n_stages].
int sense_count(double measured_delay, const ChainConfig& config, double phase_baseline);

struct Waveform {
    std::vector<double> time;                  // s, sample instants
    std::vector<std::vector<double>> stage_v;  // [sample][stage] node voltages
};

struct TransientResult {
    DelayResult delays;
    Waveform waveform;
};

// First-order RC integration of the full chain driven by one input pulse.
// Stage targets are ideal threshold inverters/buffers switching at VDD/2;
// stage capacitance is c_intrinsic plus c_load when the stage is activated.
// Inverter chains swap the live loads from even to odd stages when the input
// falls, which is why pulse_width must exceed the phase-I delay.
// Requires dt <= t_intrinsic / 20. waveform_stride thins the recorded trace
// (0 records nothing).
TransientResult transient_simulate(const ChainConfig& config, const BitVec& act,
                                   double pulse_width, double dt,
                                   std::size_t waveform_stride = 1);

// Same integration without trace capture, for tight loops.
DelayResult transient_delays(const ChainConfig& config, const BitVec& act,
                             double pulse_width, double dt);

// Least-squares slope of y against x; used to recover the unit delay from
// delay-vs-count sweeps.
double linear_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace tdcim
