#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tdcim/device.hpp"

#include <cmath>

using namespace tdcim;

namespace {

FeFetParams quiet_params() {
    FeFetParams p;
    p.sigma_vth = 0.0;
    return p;
}

} // namespace

TEST_CASE("writes program the two threshold states exactly when variation is off") {
    Rng rng(1);
    FeFetDevice dev(quiet_params());
    CHECK(dev.state() == VthState::HighVth);
    CHECK(dev.vth_effective() == doctest::Approx(1.5).epsilon(1e-15));

    dev.write(WritePolarity::Set, rng);
    CHECK(dev.state() == VthState::LowVth);
    CHECK(dev.vth_effective() == doctest::Approx(-0.5).epsilon(1e-15));

    dev.write(WritePolarity::Reset, rng);
    CHECK(dev.state() == VthState::HighVth);
    CHECK(dev.vth_effective() == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("rewriting the same polarity re-samples the threshold") {
    FeFetParams p;
    p.sigma_vth = 0.05;
    Rng rng(7);
    FeFetDevice dev(p);
    dev.write(WritePolarity::Set, rng);
    const double first = dev.vth_effective();
    dev.write(WritePolarity::Set, rng);
    const double second = dev.vth_effective();
    CHECK(first != second);
    CHECK(std::abs(first - p.vth_low) < 5.0 * p.sigma_vth);
    CHECK(std::abs(second - p.vth_low) < 5.0 * p.sigma_vth);
}

TEST_CASE("sampled thresholds average to the state mean") {
    FeFetParams p;
    p.sigma_vth = 0.05;
    Rng rng(42);
    FeFetDevice dev(p);
    double sum = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        dev.write(WritePolarity::Reset, rng);
        sum += dev.vth_effective();
    }
    CHECK(std::abs(sum / n - p.vth_high) < 0.01);
}

TEST_CASE("identical seeds reproduce the identical threshold sequence") {
    FeFetParams p;
    p.sigma_vth = 0.1;
    Rng a(123), b(123);
    FeFetDevice da(p), db(p);
    for (int i = 0; i < 50; ++i) {
        da.write(i % 2 ? WritePolarity::Set : WritePolarity::Reset, a);
        db.write(i % 2 ? WritePolarity::Set : WritePolarity::Reset, b);
        CHECK(da.vth_effective() == db.vth_effective());
    }
}

TEST_CASE("conductance hits the logistic landmarks") {
    Rng rng(1);
    FeFetDevice dev(quiet_params());
    dev.write(WritePolarity::Set, rng); // vth = -0.5
    const FeFetParams& p = dev.params();

    const double mid = dev.conductance(p.vth_low);
    CHECK(mid == doctest::Approx(p.g_leak + 0.5 * (p.g_on - p.g_leak)).epsilon(1e-12));

    const double one_slope = dev.conductance(p.vth_low + p.v_slope);
    const double expected = p.g_leak + (p.g_on - p.g_leak) / (1.0 + std::exp(-1.0));
    CHECK(one_slope == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("conductance is monotone and stays inside its rails") {
    Rng rng(1);
    FeFetDevice dev(quiet_params());
    dev.write(WritePolarity::Reset, rng); // vth = 1.5
    // Far below threshold the logistic term drops under the ulp of g_leak, so
    // the curve is only non-decreasing globally; near threshold it is strict.
    double prev = -1.0;
    for (double v = -2.0; v <= 5.0; v += 0.01) {
        const double g = dev.conductance(v);
        CHECK(g > dev.params().g_leak * (1.0 - 1e-12));
        CHECK(g < dev.params().g_on * (1.0 + 1e-12));
        if (prev >= 0.0) CHECK(g >= prev);
        prev = g;
    }
    prev = -1.0;
    for (double v = 0.0; v <= 3.0; v += 0.01) { // vth +/- 1.5 V
        const double g = dev.conductance(v);
        if (prev >= 0.0) CHECK(g > prev);
        prev = g;
    }
}

TEST_CASE("extreme gate voltages approach the rails without overflow") {
    Rng rng(1);
    FeFetDevice dev(quiet_params());
    dev.write(WritePolarity::Set, rng);
    CHECK(dev.conductance(100.0) == doctest::Approx(dev.params().g_on).epsilon(1e-12));
    CHECK(dev.conductance(-100.0) == doctest::Approx(dev.params().g_leak).epsilon(1e-9));
    CHECK(std::isfinite(dev.conductance(-1e6)));
    CHECK(std::isfinite(dev.conductance(1e6)));
}

TEST_CASE("on/off ratio clears two decades across the usable read window") {
    Rng rng(1);
    const FeFetParams p = quiet_params();
    FeFetDevice on(p), off(p);
    on.write(WritePolarity::Set, rng);
    off.write(WritePolarity::Reset, rng);
    for (double v = p.vth_low + 0.25; v <= p.vth_high - 0.25; v += 0.05) {
        CHECK(on.conductance(v) / off.conductance(v) >= 100.0);
    }
}

TEST_CASE("parameter validation rejects nonsense") {
    FeFetParams p;
    p.vth_low = 2.0; // above vth_high
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = FeFetParams{};
    p.g_on = 1e-12; // below leakage
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = FeFetParams{};
    p.v_slope = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = FeFetParams{};
    p.sigma_vth = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    CHECK_NOTHROW(FeFetParams{}.validate());
}
