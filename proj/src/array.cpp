#include "tdcim/array.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tdcim {

double energy_of(std::size_t rows, std::size_t cols, std::size_t total_activations,
                 const ChainConfig& config, double e_intrinsic_per_stage) {
    if (e_intrinsic_per_stage < 0.0)
        throw std::invalid_argument("energy_of: e_intrinsic_per_stage must be non-negative");
    const double e_act = config.c_load * config.vdd * config.vdd;
    return static_cast<double>(rows) * static_cast<double>(cols) * e_intrinsic_per_stage +
           static_cast<double>(total_activations) * e_act;
}

TdCimArray::TdCimArray(std::size_t rows, std::size_t cols, const FeFetParams& device,
                       const ChainConfig& chain, const ArrayOpParams& op, Rng& rng)
    : rows_(rows), cols_(cols), chain_(chain), op_(op) {
    if (rows_ < 1 || cols_ < 1)
        throw std::invalid_argument("TdCimArray: need at least one row and one column");
    if (cols_ % 2 != 0)
        throw std::invalid_argument("TdCimArray: two-phase readout needs an even column count");
    chain_.n_stages = cols_;
    chain_.topology = ChainTopology::Inverter;
    chain_.validate();
    e_intrinsic_ = op_.e_intrinsic_per_stage >= 0.0
                       ? op_.e_intrinsic_per_stage
                       : chain_.c_intrinsic * chain_.vdd * chain_.vdd;

    cells_.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::vector<XorAndCell> row;
        row.reserve(cols_);
        for (std::size_t c = 0; c < cols_; ++c) row.emplace_back(device, rng);
        cells_.push_back(std::move(row));
    }
}

double TdCimArray::write_row(std::size_t row, const BitVec& word, Rng& rng) {
    if (row >= rows_) throw std::out_of_range("write_row: row index out of range");
    if (word.size() != cols_)
        throw std::invalid_argument("write_row: word length must equal the column count");
    for (std::size_t c = 0; c < cols_; ++c) cells_[row][c].store(word[c], rng);
    return static_cast<double>(cols_) * op_.e_write_per_cell;
}

BitVec TdCimArray::stored_row(std::size_t row) const {
    if (row >= rows_) throw std::out_of_range("stored_row: row index out of range");
    BitVec out(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out[c] = cells_[row][c].stored_bit();
    return out;
}

BitVec TdCimArray::row_activations(const BitVec& applied, bool search_mode,
                                   Fidelity f, std::size_t row) const {
    BitVec act(cols_);
    for (std::size_t c = 0; c < cols_; ++c) {
        const XorAndCell& cell = cells_[row][c];
        if (f == Fidelity::Logical) {
            act[c] = search_mode ? (cell.stored_bit() ^ applied[c])
                                 : (cell.stored_bit() & applied[c]);
        } else {
            act[c] = search_mode
                         ? xor_output(cell, applied[c], chain_.vdd, op_.v_read, op_.solver)
                         : and_output(cell, applied[c], chain_.vdd, op_.v_read, op_.solver);
        }
    }
    return act;
}

OpReceipt TdCimArray::run_op(const BitVec& applied, bool search_mode, Fidelity f) const {
    if (applied.size() != cols_)
        throw std::invalid_argument("array op: input length must equal the column count");

    OpReceipt receipt;
    receipt.counts.resize(rows_);
    receipt.delays.resize(rows_);

    // Transient runs need a pulse that outlasts the worst-case phase-I delay.
    const double worst_phase =
        static_cast<double>(cols_) * chain_.t_intrinsic +
        static_cast<double>(cols_) * delay_per_load(chain_);
    const double pulse_width = 1.25 * worst_phase + 10.0 * chain_.t_intrinsic;
    const double dt = chain_.t_intrinsic / 20.0;
    const double phase_baseline = static_cast<double>(cols_) * chain_.t_intrinsic;

    std::size_t total_activations = 0;
    double slowest = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        const BitVec act = row_activations(applied, search_mode, f, r);
        total_activations += popcount(act);

        DelayResult d = (f == Fidelity::Transient)
                            ? transient_delays(chain_, act, pulse_width, dt)
                            : analytical_delay_inverter(chain_, act);
        receipt.delays[r] = d;
        receipt.counts[r] = sense_count(d.t_rise, chain_, phase_baseline) +
                            sense_count(d.t_fall, chain_, phase_baseline);
        slowest = std::max(slowest, d.t_total);
    }

    receipt.energy_j = energy_of(rows_, cols_, total_activations, chain_, e_intrinsic_);
    receipt.latency_s = slowest + op_.t_sense_overhead;
    return receipt;
}

OpReceipt TdCimArray::mac(const BitVec& input, Fidelity fidelity) const {
    return run_op(input, /*search_mode=*/false, fidelity);
}

OpReceipt TdCimArray::cam_search(const BitVec& query, Fidelity fidelity) const {
    OpReceipt receipt = run_op(query, /*search_mode=*/true, fidelity);
    int best = 0;
    for (std::size_t r = 1; r < rows_; ++r)
        if (receipt.counts[r] < receipt.counts[best]) best = static_cast<int>(r);
    receipt.best_match = best;
    return receipt;
}

void TdCimArray::save_image(std::ostream& os) const {
    os << rows_ << ' ' << cols_ << '\n';
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c)
            os << (cells_[r][c].stored_bit() ? '1' : '0');
        os << '\n';
    }
}

TdCimArray TdCimArray::load_image(std::istream& is, const FeFetParams& device,
                                  ChainConfig chain, const ArrayOpParams& op, Rng& rng) {
    std::size_t rows = 0, cols = 0;
    if (!(is >> rows >> cols))
        throw std::runtime_error("load_image: missing rows/cols header");
    chain.n_stages = cols;
    TdCimArray array(rows, cols, device, chain, op, rng);
    std::string line;
    std::getline(is, line); // consume the header line end
    for (std::size_t r = 0; r < rows; ++r) {
        if (!std::getline(is, line) || line.size() < cols)
            throw std::runtime_error("load_image: truncated grid");
        BitVec word(cols);
        for (std::size_t c = 0; c < cols; ++c) {
            if (line[c] != '0' && line[c] != '1')
                throw std::runtime_error("load_image: grid characters must be '0' or '1'");
            word[c] = line[c] == '1';
        }
        array.write_row(r, word, rng);
    }
    return array;
}

} // namespace tdcim
