#include "tdcim/device.hpp"

#include <cmath>
#include <stdexcept>

namespace tdcim {

void FeFetParams::validate() const {
    if (!(vth_low < vth_high))
        throw std::invalid_argument("FeFetParams: vth_low must be below vth_high");
    if (!(g_on > 0.0) || !(g_leak > 0.0))
        throw std::invalid_argument("FeFetParams: conductances must be positive");
    if (!(g_leak < g_on))
        throw std::invalid_argument("FeFetParams: g_leak must be below g_on");
    if (!(v_slope > 0.0))
        throw std::invalid_argument("FeFetParams: v_slope must be positive");
    if (sigma_vth < 0.0)
        throw std::invalid_argument("FeFetParams: sigma_vth must be non-negative");
}

FeFetDevice::FeFetDevice(const FeFetParams& params)
    : params_(params), vth_effective_(params.vth_high) {
    params_.validate();
}

void FeFetDevice::write(WritePolarity polarity, Rng& rng) {
    state_ = (polarity == WritePolarity::Set) ? VthState::LowVth : VthState::HighVth;
    const double mean =
        (state_ == VthState::LowVth) ? params_.vth_low : params_.vth_high;
    if (params_.sigma_vth > 0.0) {
        std::normal_distribution<double> dist(mean, params_.sigma_vth);
        vth_effective_ = dist(rng);
    } else {
        vth_effective_ = mean;
    }
}

namespace {

// Numerically safe logistic, exact at the tails.
double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

} // namespace

double FeFetDevice::conductance(double v_gs) const {
    const double x = (v_gs - vth_effective_) / params_.v_slope;
    return params_.g_leak + (params_.g_on - params_.g_leak) * logistic(x);
}

} // namespace tdcim
