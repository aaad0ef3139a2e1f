#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qppldpc/gf2.hpp"

namespace qppldpc {

struct DecodeResult {
    std::vector<std::uint8_t> word;  // hard decision, length n
    bool converged = false;          // zero syndrome reached
    int iterations = 0;
    int syndrome_weight = 0;
    std::vector<int> syndrome_trace;  // per-iteration weights if requested
};

/// Flooding-schedule sum-product decoder in the LLR domain.
/// Convention: positive LLR favors bit 0. Holds mutable per-edge message
/// state, so each instance is single-threaded; the parity check matrix is
/// shared read-only and many instances may run concurrently.
class BpDecoder {
public:
    explicit BpDecoder(const SparseBitMatrix& h);

    /// stall_window > 0 aborts early once the syndrome weight has been stuck
    /// at one nonzero value for that many consecutive iterations.
    DecodeResult decode(std::span<const double> channel_llrs, int max_iters,
                        bool record_trace = false, int stall_window = 0);

    /// Posterior totals of the most recent decode (valid until the next call).
    const std::vector<double>& last_totals() const { return total_; }

    std::int64_t n() const { return n_; }
    std::int64_t r() const { return r_; }

    /// Messages are clamped to this magnitude before the check update.
    static constexpr double kLlrClamp = 38.0;

private:
    std::int64_t n_ = 0, r_ = 0;
    std::vector<std::uint32_t> row_offset_;  // per check: start into edge arrays
    std::vector<std::uint32_t> edge_var_;    // per edge (grouped by check): variable
    std::vector<std::uint32_t> var_offset_;  // per variable: start into var_edges_
    std::vector<std::uint32_t> var_edges_;   // edge ids grouped by variable
    std::vector<double> v2c_, c2v_, fwd_, bwd_;
    std::vector<double> total_;
    std::vector<std::uint8_t> hard_;
};

/// Hamming weight of H * word over GF(2).
int syndrome_weight(const SparseBitMatrix& h, std::span<const std::uint8_t> word);

}  // namespace qppldpc
