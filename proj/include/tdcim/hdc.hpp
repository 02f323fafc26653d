#pragma once

#include "tdcim/array.hpp"
#include "tdcim/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace tdcim {

// Hyperdimensional classifier on binary hypervectors. Features are quantized
// to a few bits, mixed with a random base matrix into an integer profile,
// and binarized at the profile median. Class prototypes are per-bit
// majorities; inference is a nearest-Hamming search. Both heavy kernels map
// onto the array: encode as bit-plane MACs, lookup as a CAM search.

struct BaseMatrix {
    std::size_t n_features = 0;
    std::size_t dim = 0;
    std::uint64_t seed = 0;
    std::vector<BitVec> rows; // [feature][dim]

    static BaseMatrix generate(std::size_t n_features, std::size_t dim, std::uint64_t seed);
};

struct Dataset {
    std::size_t n_features = 0;
    std::vector<std::vector<double>> features;
    std::vector<int> labels;

    std::size_t size() const { return features.size(); }
};

// CSV with a header row; feature columns are decimals, last column is an
// integer class label.
Dataset load_dataset_csv(std::istream& is);

// Seeded Gaussian blobs, one per class, centers drawn uniformly per feature.
Dataset make_blobs(std::size_t n_classes, std::size_t per_class, std::size_t n_features,
                   std::uint64_t seed, double center_span = 1.0, double noise = 0.3);

struct FeatureScaling {
    std::vector<double> f_min, f_max;
    static FeatureScaling fit(const Dataset& train);
};

// Min-max quantization to unsigned levels; values outside the fitted range clamp.
std::vector<std::uint32_t> quantize(const std::vector<double>& features,
                                    const FeatureScaling& scaling, unsigned quant_bits);

// Lower median of an integer profile; binarization keeps strictly-greater bits.
std::uint32_t lower_median(std::vector<std::uint32_t> values);
BitVec binarize_at_median(const std::vector<std::uint32_t>& raw);

// Array-backed compute for the two HDC kernels. Base tiles are written once
// and reused across calls; class tiles are rewritten when the prototypes
// change. Device variation comes from the FeFetParams used to build it.
class FabricBackend {
public:
    FabricBackend(const FeFetParams& device, const ChainConfig& tile_chain,
                  std::size_t tile_rows, std::size_t tile_cols,
                  const ArrayOpParams& op, Fidelity fidelity, std::uint64_t seed);

    // Accumulated bit-plane MAC counts: raw[j] = sum_i q[i] * base[i][j].
    std::vector<std::uint32_t> encode_raw(const std::vector<std::uint32_t>& q,
                                          const BaseMatrix& base, unsigned quant_bits);

    // Chunked CAM search: total Hamming distance per class prototype.
    std::vector<int> class_distances(const BitVec& query,
                                     const std::vector<BitVec>& class_hv);

    // Cost probes for workload accounting: one representative op per kind.
    OpReceipt representative_mac();
    OpReceipt representative_cam();

    std::size_t tile_rows() const { return tile_rows_; }
    std::size_t tile_cols() const { return tile_cols_; }

private:
    TdCimArray& base_tile(const BaseMatrix& base, std::size_t d_chunk, std::size_t f_chunk);
    void refresh_class_tiles(const std::vector<BitVec>& class_hv);

    FeFetParams device_;
    ChainConfig chain_;
    std::size_t tile_rows_, tile_cols_;
    ArrayOpParams op_;
    Fidelity fidelity_;
    Rng rng_;

    std::uint64_t cached_base_key_ = 0;
    std::vector<TdCimArray> base_tiles_; // [d_chunk * n_f_chunks + f_chunk]
    std::vector<BitVec> cached_class_hv_;
    std::vector<TdCimArray> class_tiles_; // [c_chunk * n_d_chunks + d_chunk]
};

// Quantize, mix with the base, binarize. Software and fabric paths return the
// same hypervector when device variation is off.
BitVec encode(const std::vector<double>& features, const BaseMatrix& base,
              const FeatureScaling& scaling, unsigned quant_bits,
              FabricBackend* fabric = nullptr);

struct Prediction {
    int label = -1;
    int class_index = -1;
    std::vector<int> hamming;    // per class
    std::vector<int> similarity; // dim - hamming
};

class HdcModel {
public:
    HdcModel() = default;

    // Builds the base from (dim, seed), fits scaling on the training set,
    // accumulates every example once, then finalizes per-bit majorities
    // (ties to 0). Throws if any declared class ends up with no examples.
    static HdcModel train(const Dataset& train, std::size_t dim, unsigned quant_bits,
                          std::uint64_t seed, FabricBackend* fabric = nullptr);

    BitVec encode(const std::vector<double>& features, FabricBackend* fabric = nullptr) const;
    Prediction infer(const std::vector<double>& features, FabricBackend* fabric = nullptr) const;

    const BaseMatrix& base() const { return base_; }
    const FeatureScaling& scaling() const { return scaling_; }
    unsigned quant_bits() const { return quant_bits_; }
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<BitVec>& class_hypervectors() const { return class_hv_; }
    std::size_t dim() const { return base_.dim; }
    std::size_t n_features() const { return base_.n_features; }

    nlohmann::json to_json() const;
    static HdcModel from_json(const nlohmann::json& j);

private:
    BaseMatrix base_;
    FeatureScaling scaling_;
    unsigned quant_bits_ = 4;
    std::vector<int> labels_;          // ascending; class index = position
    std::vector<BitVec> class_hv_;
};

} // namespace tdcim
