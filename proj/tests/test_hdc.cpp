#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tdcim/hdc.hpp"

#include <algorithm>
#include <sstream>

using namespace tdcim;

namespace {

FeFetParams quiet_params() {
    FeFetParams p;
    p.sigma_vth = 0.0;
    return p;
}

ChainConfig tile_chain(std::size_t cols) {
    ChainConfig c;
    c.n_stages = cols;
    c.topology = ChainTopology::Inverter;
    return c;
}

// Two well-separated blob halves sharing the same class centers.
std::pair<Dataset, Dataset> split_blobs(std::size_t n_classes, std::size_t train_per,
                                        std::size_t test_per, std::size_t n_features,
                                        std::uint64_t seed) {
    const std::size_t per = train_per + test_per;
    const Dataset all = make_blobs(n_classes, per, n_features, seed, 1.0, 0.3);
    Dataset train, test;
    train.n_features = test.n_features = n_features;
    for (std::size_t cls = 0; cls < n_classes; ++cls) {
        for (std::size_t i = 0; i < per; ++i) {
            Dataset& dst = i < train_per ? train : test;
            dst.features.push_back(all.features[cls * per + i]);
            dst.labels.push_back(all.labels[cls * per + i]);
        }
    }
    return {train, test};
}

} // namespace

TEST_CASE("base matrix generation is deterministic in the seed") {
    const BaseMatrix a = BaseMatrix::generate(4, 64, 9);
    const BaseMatrix b = BaseMatrix::generate(4, 64, 9);
    const BaseMatrix c = BaseMatrix::generate(4, 64, 10);
    CHECK(a.rows == b.rows);
    CHECK(a.rows != c.rows);
    CHECK(a.rows.size() == 4);
    CHECK(a.rows[0].size() == 64);
    // Bits are drawn from the top of the word, so both values must occur.
    std::size_t ones = 0;
    for (const BitVec& row : a.rows) ones += popcount(row);
    CHECK(ones > 0);
    CHECK(ones < 4 * 64);
}

TEST_CASE("quantization maps the fitted range onto the level grid") {
    FeatureScaling s;
    s.f_min = {0.0, -1.0};
    s.f_max = {3.0, 1.0};

    const auto q = quantize({3.0, 0.0}, s, 2); // levels 0..3
    CHECK(q[0] == 3);
    CHECK(q[1] == 2); // midpoint rounds up

    // Outside the fitted range clamps instead of wrapping.
    const auto c = quantize({-5.0, 9.0}, s, 2);
    CHECK(c[0] == 0);
    CHECK(c[1] == 3);

    // A constant feature quantizes to level zero.
    FeatureScaling flat;
    flat.f_min = {2.0};
    flat.f_max = {2.0};
    CHECK(quantize({2.0}, flat, 4)[0] == 0);

    CHECK_THROWS_AS(quantize({1.0}, s, 2), std::invalid_argument);
    CHECK_THROWS_AS(quantize({1.0, 1.0}, s, 0), std::invalid_argument);
    CHECK_THROWS_AS(quantize({1.0, 1.0}, s, 17), std::invalid_argument);
}

TEST_CASE("lower median and strict binarization") {
    CHECK(lower_median({1, 2, 3, 4}) == 2);
    CHECK(lower_median({5, 1, 3}) == 3);
    CHECK(lower_median({7}) == 7);
    CHECK_THROWS_AS(lower_median({}), std::invalid_argument);

    CHECK(binarize_at_median({0, 1, 2, 3}) == BitVec{0, 0, 1, 1});
    // All-equal profiles binarize to all zeros (nothing is strictly above).
    CHECK(binarize_at_median({5, 5, 5, 5}) == BitVec{0, 0, 0, 0});
}

TEST_CASE("software encoding matches a hand-worked example") {
    BaseMatrix base;
    base.n_features = 2;
    base.dim = 4;
    base.seed = 0;
    base.rows = {{1, 0, 1, 0}, {1, 1, 0, 0}};

    FeatureScaling s;
    s.f_min = {0.0, 0.0};
    s.f_max = {3.0, 3.0};

    // q = {2, 3}; raw = {2+3, 3, 2, 0}; lower median of {5,3,2,0} is 2.
    const BitVec hv = encode({2.0, 3.0}, base, s, 2);
    CHECK(hv == BitVec{1, 1, 0, 0});
}

TEST_CASE("training on identical examples reproduces their encoding") {
    const Dataset blobs = make_blobs(2, 3, 6, 21, 1.0, 0.0); // zero noise: exact repeats
    const HdcModel m = HdcModel::train(blobs, 128, 4, 5);
    for (std::size_t cls = 0; cls < 2; ++cls) {
        const BitVec hv = m.encode(blobs.features[cls * 3]);
        CHECK(m.class_hypervectors()[cls] == hv);
    }
}

TEST_CASE("training is order independent") {
    auto [train, test] = split_blobs(3, 20, 1, 8, 33);
    Dataset shuffled = train;
    // Deterministic reordering: reverse.
    std::reverse(shuffled.features.begin(), shuffled.features.end());
    std::reverse(shuffled.labels.begin(), shuffled.labels.end());
    const HdcModel a = HdcModel::train(train, 256, 4, 7);
    const HdcModel b = HdcModel::train(shuffled, 256, 4, 7);
    CHECK(a.class_hypervectors() == b.class_hypervectors());
    CHECK(a.labels() == b.labels());
}

TEST_CASE("labels sort ascending and index the distance tables") {
    Dataset d;
    d.n_features = 2;
    d.features = {{0.0, 0.0}, {5.0, 5.0}, {0.1, 0.1}};
    d.labels = {9, 2, 9};
    const HdcModel m = HdcModel::train(d, 64, 2, 1);
    CHECK(m.labels() == std::vector<int>{2, 9});
}

TEST_CASE("inference ties resolve to the lowest class index") {
    nlohmann::json j;
    j["seed"] = 1;
    j["N"] = 2;
    j["D"] = 4;
    j["quant_bits"] = 2;
    j["feature_min"] = {0.0, 0.0};
    j["feature_max"] = {1.0, 1.0};
    j["classes"] = {{{"label", 3}, {"bits", "0101"}},
                    {{"label", 7}, {"bits", "0101"}}};
    const HdcModel m = HdcModel::from_json(j);
    const Prediction p = m.infer({0.2, 0.8});
    CHECK(p.class_index == 0);
    CHECK(p.label == 3);
    CHECK(p.hamming[0] == p.hamming[1]);
    CHECK(p.similarity[0] == 4 - p.hamming[0]);
}

TEST_CASE("model JSON round trips") {
    auto [train, test] = split_blobs(2, 10, 2, 5, 99);
    const HdcModel a = HdcModel::train(train, 64, 3, 13);
    const HdcModel b = HdcModel::from_json(a.to_json());
    CHECK(a.labels() == b.labels());
    CHECK(a.class_hypervectors() == b.class_hypervectors());
    CHECK(a.quant_bits() == b.quant_bits());
    CHECK(a.base().rows == b.base().rows);
    for (const auto& f : test.features) {
        CHECK(a.infer(f).label == b.infer(f).label);
        CHECK(a.infer(f).hamming == b.infer(f).hamming);
    }
}

TEST_CASE("model JSON validation") {
    nlohmann::json j;
    j["seed"] = 1;
    j["N"] = 2;
    j["D"] = 4;
    j["quant_bits"] = 2;
    j["feature_min"] = {0.0};
    j["feature_max"] = {1.0, 1.0};
    j["classes"] = {{{"label", 0}, {"bits", "0101"}}};
    CHECK_THROWS_AS(HdcModel::from_json(j), std::runtime_error);

    j["feature_min"] = {0.0, 0.0};
    j["classes"] = {{{"label", 0}, {"bits", "01x1"}}};
    CHECK_THROWS_AS(HdcModel::from_json(j), std::runtime_error);

    j["classes"] = {{{"label", 0}, {"bits", "011"}}};
    CHECK_THROWS_AS(HdcModel::from_json(j), std::runtime_error);

    j["classes"] = nlohmann::json::array();
    CHECK_THROWS_AS(HdcModel::from_json(j), std::runtime_error);
}

TEST_CASE("dataset CSV parsing") {
    std::stringstream good("f0,f1,label\n1.5,2.5,0\n-1.0,0.25,1\n");
    const Dataset d = load_dataset_csv(good);
    CHECK(d.n_features == 2);
    CHECK(d.size() == 2);
    CHECK(d.features[1][0] == -1.0);
    CHECK(d.labels == std::vector<int>{0, 1});

    std::stringstream empty("");
    CHECK_THROWS_AS(load_dataset_csv(empty), std::runtime_error);
    std::stringstream header_only("f0,label\n");
    CHECK_THROWS_AS(load_dataset_csv(header_only), std::runtime_error);
    std::stringstream ragged("f0,f1,label\n1,2,0\n1,0\n");
    CHECK_THROWS_AS(load_dataset_csv(ragged), std::runtime_error);
    std::stringstream text("f0,label\noops,0\n");
    CHECK_THROWS_AS(load_dataset_csv(text), std::runtime_error);
}

TEST_CASE("well separated blobs classify above ninety percent") {
    auto [train, test] = split_blobs(2, 50, 50, 16, 42);
    const HdcModel m = HdcModel::train(train, 512, 4, 42);
    std::size_t correct = 0;
    for (std::size_t e = 0; e < test.size(); ++e)
        if (m.infer(test.features[e]).label == test.labels[e]) ++correct;
    CHECK(static_cast<double>(correct) / static_cast<double>(test.size()) >= 0.9);
}

TEST_CASE("fabric encodings and predictions match software exactly") {
    auto [train, test] = split_blobs(2, 12, 6, 6, 8);
    FabricBackend fabric(quiet_params(), tile_chain(6), 4, 6, ArrayOpParams{},
                         Fidelity::Divider, 4);

    const HdcModel sw = HdcModel::train(train, 16, 3, 2);
    const HdcModel fb = HdcModel::train(train, 16, 3, 2, &fabric);
    CHECK(sw.class_hypervectors() == fb.class_hypervectors());

    for (const auto& f : test.features) {
        CHECK(sw.encode(f) == fb.encode(f, &fabric));
        const Prediction ps = sw.infer(f);
        const Prediction pf = fb.infer(f, &fabric);
        CHECK(ps.label == pf.label);
        CHECK(ps.hamming == pf.hamming);
    }
}

TEST_CASE("fabric tile geometry constraints") {
    CHECK_THROWS_AS(FabricBackend(quiet_params(), tile_chain(6), 4, 5, ArrayOpParams{},
                                  Fidelity::Logical, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(FabricBackend(quiet_params(), tile_chain(6), 0, 6, ArrayOpParams{},
                                  Fidelity::Logical, 1),
                    std::invalid_argument);
}

TEST_CASE("representative ops exercise a fully loaded tile") {
    FabricBackend fabric(quiet_params(), tile_chain(8), 4, 8, ArrayOpParams{},
                         Fidelity::Logical, 3);
    const OpReceipt m = fabric.representative_mac();
    REQUIRE(m.counts.size() == 4);
    for (int c : m.counts) CHECK(c == 8);
    CHECK(m.energy_j > 0.0);
    CHECK(m.latency_s > 0.0);

    const OpReceipt c = fabric.representative_cam();
    for (int d : c.counts) CHECK(d == 8); // all-ones rows vs all-zeros query
    CHECK(c.best_match == 0);
}
