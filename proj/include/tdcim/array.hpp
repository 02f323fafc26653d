#pragma once

#include "tdcim/cell.hpp"
#include "tdcim/chain.hpp"
#include "tdcim/types.hpp"

#include <iosfwd>
#include <vector>

namespace tdcim {

// Crossbar of storage cells with one inverter delay chain per row. A binary
// MAC is a dot product read out as arrival-time shift; a CAM search is a
// Hamming distance read out the same way (mismatches activate loads, so the
// nearest row answers first).

enum class Fidelity {
    Logical,  // boolean cell outputs, closed-form delays
    Divider,  // cell outputs from the resolved internal node voltage
    Transient // Divider activations timed by the RC engine
};

struct ArrayOpParams {
    double e_intrinsic_per_stage = -1.0; // J; < 0 derives c_intrinsic * vdd^2
    double e_write_per_cell = 1e-15;     // J per cell program
    double t_sense_overhead = 0.0;       // s added to each op's latency
    double v_read = 1.0;                 // V applied to cell gates during ops
    VintSolver solver = VintSolver::RailReferenced;
};

struct OpReceipt {
    std::vector<int> counts;         // sensed per-row result
    std::vector<DelayResult> delays; // per-row chain timing
    double energy_j = 0.0;
    double latency_s = 0.0;
    int best_match = -1;             // CAM only: row with minimum distance
};

// Op energy: every stage pays the intrinsic switching cost, every activated
// stage additionally charges its load capacitor once.
double energy_of(std::size_t rows, std::size_t cols, std::size_t total_activations,
                 const ChainConfig& config, double e_intrinsic_per_stage);

class TdCimArray {
public:
    // Writes every cell to 0 through rng. cols must match chain.n_stages and,
    // for the two-phase readout, be even; chain topology must be Inverter.
    TdCimArray(std::size_t rows, std::size_t cols, const FeFetParams& device,
               const ChainConfig& chain, const ArrayOpParams& op, Rng& rng);

    // Programs one row; returns the write energy spent.
    double write_row(std::size_t row, const BitVec& word, Rng& rng);

    // counts[r] = popcount(stored_row(r) AND input), sensed through the chain.
    OpReceipt mac(const BitVec& input, Fidelity fidelity = Fidelity::Logical) const;

    // counts[r] = Hamming(stored_row(r), query); best_match is the lowest row
    // index attaining the minimum.
    OpReceipt cam_search(const BitVec& query, Fidelity fidelity = Fidelity::Logical) const;

    BitVec stored_row(std::size_t row) const;
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const ChainConfig& chain() const { return chain_; }
    const ArrayOpParams& op_params() const { return op_; }
    double e_intrinsic_per_stage() const { return e_intrinsic_; }

    // Plain-text grid image: "rows cols" header, then one '0'/'1' line per row.
    void save_image(std::ostream& os) const;
    static TdCimArray load_image(std::istream& is, const FeFetParams& device,
                                 ChainConfig chain, const ArrayOpParams& op, Rng& rng);

private:
    BitVec row_activations(const BitVec& applied, bool search_mode, Fidelity f,
                           std::size_t row) const;
    OpReceipt run_op(const BitVec& applied, bool search_mode, Fidelity f) const;

    std::size_t rows_;
    std::size_t cols_;
    ChainConfig chain_;
    ArrayOpParams op_;
    double e_intrinsic_;
    std::vector<std::vector<XorAndCell>> cells_;
};

} // namespace tdcim
