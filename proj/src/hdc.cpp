#include "tdcim/hdc.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tdcim {

BaseMatrix BaseMatrix::generate(std::size_t n_features, std::size_t dim, std::uint64_t seed) {
    if (n_features < 1 || dim < 1)
        throw std::invalid_argument("BaseMatrix: n_features and dim must be positive");
    BaseMatrix b;
    b.n_features = n_features;
    b.dim = dim;
    b.seed = seed;
    Rng rng(seed);
    b.rows.assign(n_features, BitVec(dim));
    for (auto& row : b.rows)
        for (auto& bit : row) bit = static_cast<Bit>((rng() >> 63) & 1);
    return b;
}

Dataset load_dataset_csv(std::istream& is) {
    Dataset d;
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("dataset: empty file, expected a header row");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                cells.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::runtime_error("dataset: non-numeric cell '" + cell + "'");
            }
        }
        if (cells.size() < 2)
            throw std::runtime_error("dataset: rows need at least one feature and a label");
        const int label = static_cast<int>(std::llround(cells.back()));
        cells.pop_back();
        if (d.n_features == 0) d.n_features = cells.size();
        if (cells.size() != d.n_features)
            throw std::runtime_error("dataset: ragged row");
        d.features.push_back(std::move(cells));
        d.labels.push_back(label);
    }
    if (d.features.empty()) throw std::runtime_error("dataset: no data rows");
    return d;
}

Dataset make_blobs(std::size_t n_classes, std::size_t per_class, std::size_t n_features,
                   std::uint64_t seed, double center_span, double noise) {
    if (n_classes < 1 || per_class < 1 || n_features < 1)
        throw std::invalid_argument("make_blobs: sizes must be positive");
    Dataset d;
    d.n_features = n_features;
    Rng rng(splitmix64(seed ^ 0xB10B5ULL));
    std::uniform_real_distribution<double> center(-center_span, center_span);
    std::vector<std::vector<double>> centers(n_classes, std::vector<double>(n_features));
    for (auto& c : centers)
        for (auto& x : c) x = center(rng);
    std::normal_distribution<double> jitter(0.0, noise);
    for (std::size_t cls = 0; cls < n_classes; ++cls) {
        for (std::size_t i = 0; i < per_class; ++i) {
            std::vector<double> f(n_features);
            for (std::size_t j = 0; j < n_features; ++j)
                f[j] = centers[cls][j] + jitter(rng);
            d.features.push_back(std::move(f));
            d.labels.push_back(static_cast<int>(cls));
        }
    }
    return d;
}

FeatureScaling FeatureScaling::fit(const Dataset& train) {
    if (train.features.empty()) throw std::invalid_argument("FeatureScaling: empty dataset");
    FeatureScaling s;
    s.f_min = s.f_max = train.features.front();
    for (const auto& row : train.features)
        for (std::size_t j = 0; j < row.size(); ++j) {
            s.f_min[j] = std::min(s.f_min[j], row[j]);
            s.f_max[j] = std::max(s.f_max[j], row[j]);
        }
    return s;
}

std::vector<std::uint32_t> quantize(const std::vector<double>& features,
                                    const FeatureScaling& scaling, unsigned quant_bits) {
    if (quant_bits < 1 || quant_bits > 16)
        throw std::invalid_argument("quantize: quant_bits must be in [1, 16]");
    if (features.size() != scaling.f_min.size())
        throw std::invalid_argument("quantize: feature count does not match the scaling");
    const double levels = static_cast<double>((1u << quant_bits) - 1u);
    std::vector<std::uint32_t> q(features.size());
    for (std::size_t j = 0; j < features.size(); ++j) {
        const double span = scaling.f_max[j] - scaling.f_min[j];
        double u = span > 0.0 ? (features[j] - scaling.f_min[j]) / span : 0.0;
        u = std::clamp(u, 0.0, 1.0);
        q[j] = static_cast<std::uint32_t>(std::llround(u * levels));
    }
    return q;
}

std::uint32_t lower_median(std::vector<std::uint32_t> values) {
    if (values.empty()) throw std::invalid_argument("lower_median: empty input");
    const std::size_t mid = (values.size() - 1) / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    return values[mid];
}

BitVec binarize_at_median(const std::vector<std::uint32_t>& raw) {
    const std::uint32_t med = lower_median(raw);
    BitVec out(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j) out[j] = raw[j] > med;
    return out;
}

namespace {

std::vector<std::uint32_t> software_encode_raw(const std::vector<std::uint32_t>& q,
                                               const BaseMatrix& base) {
    std::vector<std::uint32_t> raw(base.dim, 0);
    for (std::size_t i = 0; i < base.n_features; ++i) {
        const BitVec& row = base.rows[i];
        const std::uint32_t qi = q[i];
        if (qi == 0) continue;
        for (std::size_t j = 0; j < base.dim; ++j)
            if (row[j]) raw[j] += qi;
    }
    return raw;
}

} // namespace

// --- FabricBackend -----------------------------------------------------------

FabricBackend::FabricBackend(const FeFetParams& device, const ChainConfig& tile_chain,
                             std::size_t tile_rows, std::size_t tile_cols,
                             const ArrayOpParams& op, Fidelity fidelity, std::uint64_t seed)
    : device_(device), chain_(tile_chain), tile_rows_(tile_rows), tile_cols_(tile_cols),
      op_(op), fidelity_(fidelity), rng_(splitmix64(seed ^ 0xFAB51CULL)) {
    if (tile_rows_ < 1 || tile_cols_ < 1 || tile_cols_ % 2 != 0)
        throw std::invalid_argument("FabricBackend: tile must have rows >= 1 and an even column count");
    chain_.n_stages = tile_cols_;
    chain_.topology = ChainTopology::Inverter;
}

TdCimArray& FabricBackend::base_tile(const BaseMatrix& base, std::size_t d_chunk,
                                     std::size_t f_chunk) {
    const std::size_t n_d = (base.dim + tile_rows_ - 1) / tile_rows_;
    const std::size_t n_f = (base.n_features + tile_cols_ - 1) / tile_cols_;
    const std::uint64_t key =
        splitmix64(base.seed ^ (base.n_features * 0x10001ULL) ^ (base.dim << 1));
    if (key != cached_base_key_ || base_tiles_.size() != n_d * n_f) {
        // The base is written once per model and reused across every encode.
        base_tiles_.clear();
        base_tiles_.reserve(n_d * n_f);
        for (std::size_t dc = 0; dc < n_d; ++dc) {
            for (std::size_t fc = 0; fc < n_f; ++fc) {
                TdCimArray tile(tile_rows_, tile_cols_, device_, chain_, op_, rng_);
                for (std::size_t r = 0; r < tile_rows_; ++r) {
                    const std::size_t j = dc * tile_rows_ + r; // output dimension
                    BitVec word(tile_cols_, 0);
                    if (j < base.dim)
                        for (std::size_t c = 0; c < tile_cols_; ++c) {
                            const std::size_t i = fc * tile_cols_ + c; // feature index
                            if (i < base.n_features) word[c] = base.rows[i][j];
                        }
                    tile.write_row(r, word, rng_);
                }
                base_tiles_.push_back(std::move(tile));
            }
        }
        cached_base_key_ = key;
    }
    return base_tiles_[d_chunk * n_f + f_chunk];
}

std::vector<std::uint32_t> FabricBackend::encode_raw(const std::vector<std::uint32_t>& q,
                                                     const BaseMatrix& base,
                                                     unsigned quant_bits) {
    if (q.size() != base.n_features)
        throw std::invalid_argument("encode_raw: quantized vector does not match the base");
    const std::size_t n_d = (base.dim + tile_rows_ - 1) / tile_rows_;
    const std::size_t n_f = (base.n_features + tile_cols_ - 1) / tile_cols_;

    std::vector<std::uint32_t> raw(base.dim, 0);
    for (unsigned p = 0; p < quant_bits; ++p) {
        for (std::size_t fc = 0; fc < n_f; ++fc) {
            // bit-plane p of the quantized features, one tile-width chunk
            BitVec plane(tile_cols_, 0);
            for (std::size_t c = 0; c < tile_cols_; ++c) {
                const std::size_t i = fc * tile_cols_ + c;
                if (i < base.n_features) plane[c] = (q[i] >> p) & 1u;
            }
            for (std::size_t dc = 0; dc < n_d; ++dc) {
                const OpReceipt r = base_tile(base, dc, fc).mac(plane, fidelity_);
                for (std::size_t row = 0; row < tile_rows_; ++row) {
                    const std::size_t j = dc * tile_rows_ + row;
                    if (j < base.dim)
                        raw[j] += static_cast<std::uint32_t>(r.counts[row]) << p;
                }
            }
        }
    }
    return raw;
}

void FabricBackend::refresh_class_tiles(const std::vector<BitVec>& class_hv) {
    if (class_hv == cached_class_hv_ && !class_tiles_.empty()) return;
    if (class_hv.empty()) throw std::invalid_argument("class_distances: no class prototypes");
    const std::size_t dim = class_hv.front().size();
    const std::size_t n_c = (class_hv.size() + tile_rows_ - 1) / tile_rows_;
    const std::size_t n_d = (dim + tile_cols_ - 1) / tile_cols_;
    class_tiles_.clear();
    class_tiles_.reserve(n_c * n_d);
    for (std::size_t cc = 0; cc < n_c; ++cc) {
        for (std::size_t dc = 0; dc < n_d; ++dc) {
            TdCimArray tile(tile_rows_, tile_cols_, device_, chain_, op_, rng_);
            for (std::size_t r = 0; r < tile_rows_; ++r) {
                const std::size_t cls = cc * tile_rows_ + r;
                BitVec word(tile_cols_, 0);
                if (cls < class_hv.size())
                    for (std::size_t c = 0; c < tile_cols_; ++c) {
                        const std::size_t j = dc * tile_cols_ + c;
                        if (j < dim) word[c] = class_hv[cls][j];
                    }
                tile.write_row(r, word, rng_);
            }
            class_tiles_.push_back(std::move(tile));
        }
    }
    cached_class_hv_ = class_hv;
}

std::vector<int> FabricBackend::class_distances(const BitVec& query,
                                                const std::vector<BitVec>& class_hv) {
    refresh_class_tiles(class_hv);
    const std::size_t dim = class_hv.front().size();
    const std::size_t n_c = (class_hv.size() + tile_rows_ - 1) / tile_rows_;
    const std::size_t n_d = (dim + tile_cols_ - 1) / tile_cols_;

    std::vector<int> distance(class_hv.size(), 0);
    for (std::size_t cc = 0; cc < n_c; ++cc) {
        for (std::size_t dc = 0; dc < n_d; ++dc) {
            BitVec chunk(tile_cols_, 0);
            for (std::size_t c = 0; c < tile_cols_; ++c) {
                const std::size_t j = dc * tile_cols_ + c;
                if (j < dim) chunk[c] = query[j];
            }
            const OpReceipt r = class_tiles_[cc * n_d + dc].cam_search(chunk, fidelity_);
            for (std::size_t row = 0; row < tile_rows_; ++row) {
                const std::size_t cls = cc * tile_rows_ + row;
                if (cls < class_hv.size()) distance[cls] += r.counts[row];
            }
        }
    }
    return distance;
}

OpReceipt FabricBackend::representative_mac() {
    TdCimArray tile(tile_rows_, tile_cols_, device_, chain_, op_, rng_);
    const BitVec ones(tile_cols_, 1);
    for (std::size_t r = 0; r < tile_rows_; ++r) tile.write_row(r, ones, rng_);
    return tile.mac(ones, fidelity_);
}

OpReceipt FabricBackend::representative_cam() {
    TdCimArray tile(tile_rows_, tile_cols_, device_, chain_, op_, rng_);
    const BitVec ones(tile_cols_, 1);
    for (std::size_t r = 0; r < tile_rows_; ++r) tile.write_row(r, ones, rng_);
    return tile.cam_search(BitVec(tile_cols_, 0), fidelity_);
}

// --- encode / model ----------------------------------------------------------

BitVec encode(const std::vector<double>& features, const BaseMatrix& base,
              const FeatureScaling& scaling, unsigned quant_bits, FabricBackend* fabric) {
    const std::vector<std::uint32_t> q = quantize(features, scaling, quant_bits);
    const std::vector<std::uint32_t> raw =
        fabric ? fabric->encode_raw(q, base, quant_bits) : software_encode_raw(q, base);
    return binarize_at_median(raw);
}

HdcModel HdcModel::train(const Dataset& train, std::size_t dim, unsigned quant_bits,
                         std::uint64_t seed, FabricBackend* fabric) {
    if (train.features.empty()) throw std::invalid_argument("train: empty dataset");

    HdcModel m;
    m.base_ = BaseMatrix::generate(train.n_features, dim, seed);
    m.scaling_ = FeatureScaling::fit(train);
    m.quant_bits_ = quant_bits;

    m.labels_.assign(train.labels.begin(), train.labels.end());
    std::sort(m.labels_.begin(), m.labels_.end());
    m.labels_.erase(std::unique(m.labels_.begin(), m.labels_.end()), m.labels_.end());

    // Integer bit accumulators make training single-pass and order-free.
    std::vector<std::vector<std::uint32_t>> sums(m.labels_.size(),
                                                 std::vector<std::uint32_t>(dim, 0));
    std::vector<std::uint32_t> seen(m.labels_.size(), 0);
    for (std::size_t e = 0; e < train.size(); ++e) {
        const auto it = std::lower_bound(m.labels_.begin(), m.labels_.end(), train.labels[e]);
        const std::size_t cls = static_cast<std::size_t>(it - m.labels_.begin());
        const BitVec hv = tdcim::encode(train.features[e], m.base_, m.scaling_,
                                        quant_bits, fabric);
        for (std::size_t j = 0; j < dim; ++j) sums[cls][j] += hv[j];
        ++seen[cls];
    }

    m.class_hv_.assign(m.labels_.size(), BitVec(dim, 0));
    for (std::size_t cls = 0; cls < m.labels_.size(); ++cls) {
        if (seen[cls] == 0)
            throw std::runtime_error("train: class with no examples");
        for (std::size_t j = 0; j < dim; ++j)
            m.class_hv_[cls][j] = (2 * sums[cls][j] > seen[cls]) ? 1 : 0; // tie -> 0
    }
    return m;
}

BitVec HdcModel::encode(const std::vector<double>& features, FabricBackend* fabric) const {
    return tdcim::encode(features, base_, scaling_, quant_bits_, fabric);
}

Prediction HdcModel::infer(const std::vector<double>& features, FabricBackend* fabric) const {
    if (class_hv_.empty()) throw std::runtime_error("infer: model has no trained classes");
    const BitVec hv = encode(features, fabric);

    Prediction p;
    p.hamming.resize(class_hv_.size());
    if (fabric) {
        p.hamming = fabric->class_distances(hv, class_hv_);
    } else {
        for (std::size_t cls = 0; cls < class_hv_.size(); ++cls) {
            int h = 0;
            for (std::size_t j = 0; j < hv.size(); ++j) h += class_hv_[cls][j] != hv[j];
            p.hamming[cls] = h;
        }
    }
    p.similarity.resize(class_hv_.size());
    for (std::size_t cls = 0; cls < class_hv_.size(); ++cls)
        p.similarity[cls] = static_cast<int>(dim()) - p.hamming[cls];

    p.class_index = 0;
    for (std::size_t cls = 1; cls < class_hv_.size(); ++cls)
        if (p.hamming[cls] < p.hamming[p.class_index]) p.class_index = static_cast<int>(cls);
    p.label = labels_[static_cast<std::size_t>(p.class_index)];
    return p;
}

namespace {

std::string bits_to_string(const BitVec& bits) {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) s[i] = '1';
    return s;
}

BitVec string_to_bits(const std::string& s) {
    BitVec bits(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1')
            throw std::runtime_error("model: hypervector strings must be '0'/'1'");
        bits[i] = s[i] == '1';
    }
    return bits;
}

} // namespace

nlohmann::json HdcModel::to_json() const {
    nlohmann::json j;
    j["seed"] = base_.seed;
    j["N"] = base_.n_features;
    j["D"] = base_.dim;
    j["quant_bits"] = quant_bits_;
    j["feature_min"] = scaling_.f_min;
    j["feature_max"] = scaling_.f_max;
    nlohmann::json classes = nlohmann::json::array();
    for (std::size_t cls = 0; cls < labels_.size(); ++cls) {
        classes.push_back(
            {{"label", labels_[cls]}, {"bits", bits_to_string(class_hv_[cls])}});
    }
    j["classes"] = classes;
    return j;
}

HdcModel HdcModel::from_json(const nlohmann::json& j) {
    HdcModel m;
    const std::size_t n = j.at("N").get<std::size_t>();
    const std::size_t d = j.at("D").get<std::size_t>();
    m.base_ = BaseMatrix::generate(n, d, j.at("seed").get<std::uint64_t>());
    m.quant_bits_ = j.at("quant_bits").get<unsigned>();
    m.scaling_.f_min = j.at("feature_min").get<std::vector<double>>();
    m.scaling_.f_max = j.at("feature_max").get<std::vector<double>>();
    if (m.scaling_.f_min.size() != n || m.scaling_.f_max.size() != n)
        throw std::runtime_error("model: feature scaling does not match N");
    for (const auto& c : j.at("classes")) {
        m.labels_.push_back(c.at("label").get<int>());
        m.class_hv_.push_back(string_to_bits(c.at("bits").get<std::string>()));
        if (m.class_hv_.back().size() != d)
            throw std::runtime_error("model: class hypervector length does not match D");
    }
    if (m.labels_.empty()) throw std::runtime_error("model: no classes");
    return m;
}

} // namespace tdcim
