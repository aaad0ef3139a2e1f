#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qppldpc/gf2.hpp"

namespace qppldpc {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Exact permanent via Ryser's formula with Gray-code subset enumeration,
/// O(2^m * m). Throws std::invalid_argument beyond dimension 20.
std::int64_t permanent(const IntMatrix& m);

/// Sum over the |S| sub-column-sets of size rows(A) of the permanent of the
/// corresponding square submatrix. Requires |S| == rows(A) + 1.
std::int64_t psi(const WeightMatrix& a, const std::vector<int>& s);

struct RecursionEvent {
    int depth = 0;
    std::vector<int> parent_columns;  // the column set whose psi vanished
    std::vector<int> zero_rows;       // rows removed before recursing
    WeightMatrix submatrix;
};

struct BoundResult {
    std::optional<std::int64_t> bound;  // empty when every psi(S) = 0
    std::vector<int> columns;           // minimizing column set
    bool improved_by_recursion = false;
    std::int64_t sets_examined = 0;
    std::vector<RecursionEvent> events;
};

struct DminOptions {
    bool recursive = false;
    std::int64_t max_sets = -1;  // enumeration budget per level, -1 = unlimited
    int threads = 1;
};

/// Weight-matrix upper bound on the minimum distance: minimum of psi(S) over
/// column sets of size rows+1 with psi(S) != 0. Lexicographic enumeration
/// with zero-row prefiltering and running-minimum pruning; ties resolved
/// toward the lexicographically smallest set.
BoundResult dmin_upper_bound(const WeightMatrix& a, const DminOptions& opts = {});

/// Same bound, but column sets with psi(S) = 0 are refined by removing the
/// all-zero rows of their submatrix and recursing; the result is the minimum
/// over the base bound and all recursive bounds.
BoundResult dmin_recursive(const WeightMatrix& a, const DminOptions& opts = {});

/// Constructive counterpart of the psi bound. Over the circulant block
/// structure, each admissible column set S yields an explicit codeword whose
/// block components are the cofactor determinants of the polynomial submatrix
/// (determinant = permanent in characteristic 2), so its weight is at most
/// psi(S). Returns verified codeword supports in original column indices,
/// lightest first. Grid row counts above 8 are refused (factorial expansion).
std::vector<std::vector<std::uint32_t>> cofactor_codewords(const SparseBitMatrix& h,
                                                           const QcRearrangement& qc,
                                                           const CirculantDecomposition& dec,
                                                           std::size_t max_results = 64);

}  // namespace qppldpc
