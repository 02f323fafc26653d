#include "tdcim/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tdcim {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

void ChainConfig::validate() const {
    if (n_stages < 1)
        throw std::invalid_argument("ChainConfig: n_stages must be at least 1");
    if (topology == ChainTopology::Inverter && n_stages % 2 != 0)
        throw std::invalid_argument("ChainConfig: inverter chains need an even stage count");
    if (!(t_intrinsic > 0.0) || !(c_load > 0.0) || !(c_intrinsic > 0.0) ||
        !(r_drive > 0.0) || !(vdd > 0.0))
        throw std::invalid_argument("ChainConfig: timing and electrical values must be positive");
}

double ChainConfig::calibrated_c_intrinsic(double t_intrinsic, double r_drive) {
    return t_intrinsic / (kLn2 * r_drive);
}

double delay_per_load(const ChainConfig& config) {
    return kLn2 * config.r_drive * config.c_load;
}

std::size_t even_stage_count(const BitVec& act) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < act.size(); ++i)
        if (act[i] && (i + 1) % 2 == 0) ++n;
    return n;
}

std::size_t odd_stage_count(const BitVec& act) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < act.size(); ++i)
        if (act[i] && (i + 1) % 2 == 1) ++n;
    return n;
}

namespace {

void check_act(const ChainConfig& config, const BitVec& act) {
    config.validate();
    if (act.size() != config.n_stages)
        throw std::invalid_argument("activation vector length must equal n_stages");
}

} // namespace

DelayResult analytical_delay_buffer(const ChainConfig& config, const BitVec& act) {
    check_act(config, act);
    const double t =
        static_cast<double>(config.n_stages) * config.t_intrinsic +
        static_cast<double>(popcount(act)) * delay_per_load(config);
    return DelayResult{t, t, t};
}

DelayResult analytical_delay_inverter(const ChainConfig& config, const BitVec& act) {
    check_act(config, act);
    if (config.n_stages % 2 != 0)
        throw std::invalid_argument("inverter chains need an even stage count");
    const double base = static_cast<double>(config.n_stages) * config.t_intrinsic;
    const double t_c = delay_per_load(config);
    const double t_rise = base + static_cast<double>(even_stage_count(act)) * t_c;
    const double t_fall = base + static_cast<double>(odd_stage_count(act)) * t_c;
    return DelayResult{t_rise, t_fall, t_rise + t_fall};
}

DelayResult analytical_delay(const ChainConfig& config, const BitVec& act) {
    return config.topology == ChainTopology::Buffer
               ? analytical_delay_buffer(config, act)
               : analytical_delay_inverter(config, act);
}

int sense_count(double measured_delay, const ChainConfig& config, double phase_baseline) {
    const double t_c = delay_per_load(config);
    long long n = std::llround((measured_delay - phase_baseline) / t_c);
    n = std::clamp(n, 0LL, static_cast<long long>(config.n_stages));
    return static_cast<int>(n);
}

namespace {

struct EdgeTimes {
    double rise = -1.0;
    double fall = -1.0;
};

// Integrates the chain with exact per-step exponential updates. Stage drive
// targets are re-evaluated each step from the previous stage's start-of-step
// voltage thresholded at VDD/2, so a threshold crossing takes effect on the
// following step; with dt capped at t_intrinsic/20 the resulting bias stays
// well inside the calibration tolerance.
TransientResult integrate(const ChainConfig& config, const BitVec& act,
                          double pulse_width, double dt, std::size_t waveform_stride) {
    check_act(config, act);
    if (!(dt > 0.0) || dt > config.t_intrinsic / 20.0 * (1.0 + 1e-9))
        throw std::invalid_argument("transient_simulate: dt must be positive and at most t_intrinsic/20");
    if (!(pulse_width > 0.0))
        throw std::invalid_argument("transient_simulate: pulse_width must be positive");

    const std::size_t n = config.n_stages;
    const bool inverter = config.topology == ChainTopology::Inverter;
    const double vdd = config.vdd;
    const double half = 0.5 * vdd;
    const double t_c = delay_per_load(config);

    if (inverter) {
        const double phase1 =
            static_cast<double>(n) * config.t_intrinsic +
            static_cast<double>(even_stage_count(act)) * t_c;
        if (pulse_width <= phase1)
            throw std::invalid_argument(
                "transient_simulate: pulse_width must exceed the phase-I delay so the rising "
                "edge clears the chain before the loads switch phase");
    }

    // Live load pattern per phase. Buffers keep every activated load on for
    // the whole pulse; inverters time the rising edge against even stages and
    // the falling edge against odd stages.
    std::vector<char> live_phase1(n), live_phase2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool even_stage = (i + 1) % 2 == 0;
        if (inverter) {
            live_phase1[i] = act[i] && even_stage;
            live_phase2[i] = act[i] && !even_stage;
        } else {
            live_phase1[i] = live_phase2[i] = act[i] != 0;
        }
    }

    // Quiescent start for a low input: buffers sit at 0, inverters alternate.
    std::vector<double> v(n, 0.0);
    if (inverter)
        for (std::size_t i = 0; i < n; ++i) v[i] = ((i + 1) % 2 == 1) ? vdd : 0.0;

    const double settle =
        static_cast<double>(n) * config.t_intrinsic + static_cast<double>(n) * t_c;
    const double t_end = pulse_width + 2.0 * settle + 20.0 * config.t_intrinsic;

    TransientResult out;
    out.delays = DelayResult{-1.0, -1.0, -1.0};
    if (waveform_stride > 0) {
        out.waveform.time.push_back(0.0);
        out.waveform.stage_v.push_back(v);
    }

    EdgeTimes edges;
    std::vector<double> v_prev(n);
    double t = 0.0;
    double record_until = -1.0; // short tail after the last edge, for plots
    std::size_t step = 0;
    while (t < t_end) {
        if (edges.rise >= 0.0 && edges.fall >= 0.0) {
            if (waveform_stride == 0) break;
            if (record_until < 0.0) record_until = t + 30.0 * config.t_intrinsic;
            if (t >= record_until) break;
        }
        v_prev = v;
        const double t_next = t + dt;
        const double vin = (t_next < pulse_width) ? vdd : 0.0;
        const std::vector<char>& live =
            (t_next < pulse_width) ? live_phase1 : live_phase2;

        for (std::size_t i = 0; i < n; ++i) {
            const double upstream = (i == 0) ? vin : v_prev[i - 1];
            bool high = upstream > half;
            if (inverter) high = !high;
            const double target = high ? vdd : 0.0;
            const double cap = config.c_intrinsic + (live[i] ? config.c_load : 0.0);
            const double tau = config.r_drive * cap;
            v[i] = target + (v_prev[i] - target) * std::exp(-dt / tau);
        }

        // Output edge instants from the exact in-step exponential trajectory.
        const double out_old = v_prev[n - 1];
        const double out_new = v[n - 1];
        if (edges.rise < 0.0 && out_old <= half && out_new > half) {
            const double target = vdd;
            const double cap = config.c_intrinsic + (live[n - 1] ? config.c_load : 0.0);
            const double tau = config.r_drive * cap;
            edges.rise = t + tau * std::log((out_old - target) / (half - target));
        }
        if (edges.fall < 0.0 && edges.rise >= 0.0 && out_old >= half && out_new < half) {
            const double target = 0.0;
            const double cap = config.c_intrinsic + (live[n - 1] ? config.c_load : 0.0);
            const double tau = config.r_drive * cap;
            edges.fall = t + tau * std::log((out_old - target) / (half - target));
        }

        t = t_next;
        ++step;
        if (waveform_stride > 0 && step % waveform_stride == 0) {
            out.waveform.time.push_back(t);
            out.waveform.stage_v.push_back(v);
        }
    }

    if (edges.rise < 0.0 || edges.fall < 0.0)
        throw std::runtime_error("transient_simulate: output edge never crossed VDD/2");

    const double t_rise = edges.rise;               // input rose at t = 0
    const double t_fall = edges.fall - pulse_width; // input fell at t = pulse_width
    out.delays.t_rise = t_rise;
    out.delays.t_fall = t_fall;
    out.delays.t_total = inverter ? t_rise + t_fall : t_rise;
    return out;
}

} // namespace

TransientResult transient_simulate(const ChainConfig& config, const BitVec& act,
                                   double pulse_width, double dt,
                                   std::size_t waveform_stride) {
    return integrate(config, act, pulse_width, dt, waveform_stride);
}

DelayResult transient_delays(const ChainConfig& config, const BitVec& act,
                             double pulse_width, double dt) {
    return integrate(config, act, pulse_width, dt, 0).delays;
}

double linear_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_slope: need two series of equal length >= 2");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    if (den == 0.0) throw std::invalid_argument("linear_slope: x values are all equal");
    return num / den;
}

} // namespace tdcim
