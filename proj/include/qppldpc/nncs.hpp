#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qppldpc/gf2.hpp"

namespace qppldpc {

/// Low-weight codeword search by biased decoding: selected positions get a
/// saturated log-likelihood favoring bit 1 while everything else sits at a
/// high-confidence zero, and the decoder is asked to settle on a nonzero
/// codeword. Starting from single positions (or pairs), the biased set grows
/// one variable at a time through checks left unsatisfied by the bias
/// pattern, ranked by the decoder's soft output, until a convergence happens
/// or the decode budget runs out. Positions in the same automorphism class
/// lead to shifted copies of the same codewords, so only class
/// representatives are used as starts.
struct NncsConfig {
    enum class Mode { single, pair };
    Mode mode = Mode::single;

    /// Saturated magnitude at biased positions; must exceed
    /// max-column-degree * BpDecoder::kLlrClamp or the graph overrides the bias.
    double bias_llr = 250.0;
    double base_llr = 2.0;  // confidence toward zero everywhere else
    int decoder_iters = 30;
    std::int64_t budget = 10000;  // total decode invocations
    std::uint64_t seed = 1;       // orders pair starts when they exceed the budget
    int fanout = 5;               // branches explored per failed decode
    int max_biased = 14;          // cap on the biased-set size
    int stall_window = 0;         // abort a decode stuck at one syndrome weight (0 = off)
    std::optional<int> stop_at_weight;  // stop a start early once this is reached
    int threads = 1;

    /// Start positions (automorphism class representatives); empty = all columns.
    std::vector<std::int64_t> representatives;

    /// Candidate supports biased wholesale before the positional starts run,
    /// one decode each (e.g. cofactor_codewords of a quasi-cyclic structure);
    /// the decoder verifies them and may settle on something lighter.
    std::vector<std::vector<std::uint32_t>> seed_supports;
};

struct NncsFound {
    int weight = 0;
    std::vector<std::uint32_t> support;
    std::int64_t at_decode = 0;  // budget position when found
};

struct NncsResult {
    std::optional<int> best_weight;  // empty = no nonzero codeword found
    std::vector<std::uint32_t> best_support;
    std::int64_t decodes = 0;
    std::vector<NncsFound> found;
};

NncsResult nncs_search(const SparseBitMatrix& h, const NncsConfig& config);

}  // namespace qppldpc
