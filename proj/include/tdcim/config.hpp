#pragma once

#include "tdcim/analysis.hpp"
#include "tdcim/array.hpp"
#include "tdcim/chain.hpp"
#include "tdcim/device.hpp"

#include <cstdint>
#include <string>

#include "json.hpp"

namespace tdcim {

// Malformed configuration input (syntax, unknown keys, bad values).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HdcConfig {
    std::size_t n_features = 16;
    std::size_t dim = 512;
    unsigned quant_bits = 4;
    std::uint64_t seed = 42;
    std::string dataset;          // path to CSV; empty -> synthetic blobs
    std::size_t n_classes = 2;    // synthetic generator
    std::size_t train_per_class = 100;
    std::size_t test_per_class = 100;
    double blob_noise = 0.3;
    std::string backend = "software"; // or "fabric"
};

struct AllocConfig {
    std::size_t n_tiles = 10;
    std::size_t tile_rows = 32;
    std::size_t tile_cols = 32;
};

struct ExperimentConfig {
    FeFetParams device;
    double v_read = 1.0;
    ChainConfig chain;
    std::size_t array_rows = 32;
    std::size_t array_cols = 32;
    ArrayOpParams array_op;
    MonteCarloSpec mc;
    DseSpec dse = DseSpec::defaults();
    HdcConfig hdc;
    AllocConfig alloc;
    std::uint64_t seed = 1;

    // Parses JSON text. Missing keys keep defaults; unknown keys are errors.
    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_file(const std::string& path);

    // Fully resolved view, for metadata headers and reproducibility dumps.
    nlohmann::json to_json() const;

    void validate() const;
};

} // namespace tdcim
