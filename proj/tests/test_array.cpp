#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tdcim/array.hpp"

#include <cmath>
#include <sstream>
#include <vector>

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

TdCimArray make_array(std::size_t rows, std::size_t cols,
                      const std::vector<BitVec>& contents, Rng& rng) {
    TdCimArray a(rows, cols, quiet_params(), tile_chain(cols), ArrayOpParams{}, rng);
    for (std::size_t r = 0; r < rows; ++r) a.write_row(r, contents[r], rng);
    return a;
}

int dot(const BitVec& a, const BitVec& b) {
    int n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += a[i] & b[i];
    return n;
}

int hamming(const BitVec& a, const BitVec& b) {
    int n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += a[i] != b[i];
    return n;
}

BitVec bits_of(unsigned v, std::size_t n) {
    BitVec out(n, 0);
    for (std::size_t i = 0; i < n; ++i) out[i] = (v >> i) & 1u;
    return out;
}

} // namespace

TEST_CASE("construction constraints") {
    Rng rng(1);
    CHECK_THROWS_AS(TdCimArray(4, 7, quiet_params(), tile_chain(8), ArrayOpParams{}, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(TdCimArray(0, 8, quiet_params(), tile_chain(8), ArrayOpParams{}, rng),
                    std::invalid_argument);
    TdCimArray a(2, 8, quiet_params(), tile_chain(8), ArrayOpParams{}, rng);
    CHECK(a.chain().n_stages == 8);
    CHECK(a.chain().topology == ChainTopology::Inverter);
    CHECK(a.stored_row(0) == BitVec(8, 0));
}

TEST_CASE("write then read back") {
    Rng rng(2);
    const BitVec word{1, 0, 1, 1, 0, 0, 1, 0};
    TdCimArray a(2, 8, quiet_params(), tile_chain(8), ArrayOpParams{}, rng);
    const double e = a.write_row(1, word, rng);
    CHECK(a.stored_row(1) == word);
    CHECK(a.stored_row(0) == BitVec(8, 0));
    CHECK(e == doctest::Approx(8.0 * 1e-15).epsilon(1e-12));
}

TEST_CASE("mac counts equal dot products across fidelities") {
    Rng rng(3);
    const std::vector<BitVec> rows{{1, 1, 0, 0, 1, 0, 1, 0},
                                   {0, 0, 0, 0, 0, 0, 0, 0},
                                   {1, 1, 1, 1, 1, 1, 1, 1},
                                   {0, 1, 0, 1, 0, 1, 0, 1}};
    TdCimArray a = make_array(4, 8, rows, rng);
    const BitVec input{1, 0, 1, 1, 0, 1, 1, 0};
    for (const Fidelity f : {Fidelity::Logical, Fidelity::Divider, Fidelity::Transient}) {
        const OpReceipt r = a.mac(input, f);
        REQUIRE(r.counts.size() == 4);
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(r.counts[i] == dot(rows[i], input));
    }
}

TEST_CASE("cam counts equal hamming distances and best match breaks ties low") {
    Rng rng(4);
    const std::vector<BitVec> rows{{1, 1, 0, 0, 1, 0, 1, 0},
                                   {1, 1, 0, 0, 1, 0, 1, 1},
                                   {1, 1, 0, 0, 1, 0, 1, 0},   // duplicate of row 0
                                   {0, 0, 1, 1, 0, 1, 0, 1}};
    TdCimArray a = make_array(4, 8, rows, rng);
    const BitVec query{1, 1, 0, 0, 1, 0, 1, 0};
    for (const Fidelity f : {Fidelity::Logical, Fidelity::Divider, Fidelity::Transient}) {
        const OpReceipt r = a.cam_search(query, f);
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(r.counts[i] == hamming(rows[i], query));
        CHECK(r.best_match == 0); // rows 0 and 2 tie at distance zero
    }
}

TEST_CASE("exhaustive small array agrees with brute force") {
    Rng rng(5);
    const std::vector<BitVec> rows{bits_of(0xA5u, 8), bits_of(0x3Cu, 8),
                                   bits_of(0x00u, 8), bits_of(0xFFu, 8)};
    TdCimArray a = make_array(4, 8, rows, rng);
    for (unsigned v = 0; v < 256; ++v) {
        const BitVec in = bits_of(v, 8);
        const OpReceipt m = a.mac(in, Fidelity::Divider);
        const OpReceipt c = a.cam_search(in, Fidelity::Divider);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(m.counts[i] == dot(rows[i], in));
            CHECK(c.counts[i] == hamming(rows[i], in));
        }
    }
}

TEST_CASE("energy model charges intrinsic stages always and loads per activation") {
    ChainConfig c = tile_chain(8);
    const double e_stage = 2e-16;
    // 2 rows x 8 cols, 5 activations.
    const double e = energy_of(2, 8, 5, c, e_stage);
    const double expected = 16.0 * e_stage + 5.0 * c.c_load * c.vdd * c.vdd;
    CHECK(e == doctest::Approx(expected).epsilon(1e-12));
    CHECK_THROWS_AS(energy_of(2, 8, 5, c, -1.0), std::invalid_argument);
}

TEST_CASE("derived intrinsic energy uses the calibrated stage capacitance") {
    Rng rng(6);
    TdCimArray a(1, 8, quiet_params(), tile_chain(8), ArrayOpParams{}, rng);
    const ChainConfig& c = a.chain();
    CHECK(a.e_intrinsic_per_stage() ==
          doctest::Approx(c.c_intrinsic * c.vdd * c.vdd).epsilon(1e-12));
}

TEST_CASE("zero activations still cost the intrinsic term") {
    Rng rng(7);
    const std::vector<BitVec> rows{BitVec(8, 0)};
    TdCimArray a = make_array(1, 8, rows, rng);
    const OpReceipt r = a.mac(BitVec(8, 0), Fidelity::Logical);
    CHECK(r.counts[0] == 0);
    const double expected =
        8.0 * a.e_intrinsic_per_stage(); // no load term
    CHECK(r.energy_j == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("latency is the slowest row plus the sense overhead") {
    Rng rng(8);
    ArrayOpParams op;
    op.t_sense_overhead = 1e-10;
    const BitVec all1(8, 1), none(8, 0);
    TdCimArray a(2, 8, quiet_params(), tile_chain(8), op, rng);
    a.write_row(0, all1, rng);
    a.write_row(1, none, rng);
    const OpReceipt r = a.mac(all1, Fidelity::Logical);
    const DelayResult slow = analytical_delay(a.chain(), all1);
    CHECK(r.latency_s == doctest::Approx(slow.t_total + 1e-10).epsilon(1e-12));
    CHECK(r.delays[0].t_total > r.delays[1].t_total);
}

TEST_CASE("grid image round trips") {
    Rng rng(9);
    const std::vector<BitVec> rows{{1, 0, 1, 0, 1, 0, 1, 0}, {0, 0, 1, 1, 0, 0, 1, 1}};
    TdCimArray a = make_array(2, 8, rows, rng);
    std::stringstream ss;
    a.save_image(ss);
    CHECK(ss.str().substr(0, 3) == "2 8");
    TdCimArray b =
        TdCimArray::load_image(ss, quiet_params(), tile_chain(8), ArrayOpParams{}, rng);
    CHECK(b.rows() == 2);
    CHECK(b.cols() == 8);
    CHECK(b.stored_row(0) == rows[0]);
    CHECK(b.stored_row(1) == rows[1]);

    std::stringstream bad("2 8\n10101010\n001100\n");
    CHECK_THROWS_AS(
        TdCimArray::load_image(bad, quiet_params(), tile_chain(8), ArrayOpParams{}, rng),
        std::runtime_error);
}
