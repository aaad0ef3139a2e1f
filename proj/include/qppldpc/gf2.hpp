#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qppldpc {

/// Sparse binary matrix stored as per-row sorted column-index lists.
/// Entries are {0,1}; duplicate indices are not allowed.
class SparseBitMatrix {
public:
    SparseBitMatrix() = default;
    SparseBitMatrix(std::int64_t rows, std::int64_t cols);

    std::int64_t rows() const { return rows_; }
    std::int64_t cols() const { return cols_; }

    /// Inserts an entry; throws if out of range or already present.
    void insert(std::int64_t row, std::int64_t col);

    bool get(std::int64_t row, std::int64_t col) const;

    const std::vector<std::uint32_t>& row(std::int64_t r) const {
        return row_cols_[static_cast<std::size_t>(r)];
    }

    std::int64_t nnz() const;
    std::vector<std::int64_t> row_weights() const;
    std::vector<std::int64_t> col_weights() const;

    /// Column-index lists transposed to per-column row lists.
    std::vector<std::vector<std::uint32_t>> col_lists() const;

    /// New matrix with rows reordered: result row i = this row row_perm[i].
    SparseBitMatrix permute_rows(const std::vector<std::uint32_t>& row_perm) const;
    /// New matrix with columns relabeled: result column col_perm_inv[j] = this column j,
    /// i.e. col_perm[i] gives the original column placed at position i.
    SparseBitMatrix permute_cols(const std::vector<std::uint32_t>& col_perm) const;

    bool operator==(const SparseBitMatrix&) const = default;

private:
    std::int64_t rows_ = 0, cols_ = 0;
    std::vector<std::vector<std::uint32_t>> row_cols_;
};

/// Rank over GF(2) via bit-packed Gaussian elimination.
std::int64_t rank_gf2(const SparseBitMatrix& m);

/// Column/row regrouping of a quasi-cyclic parity check matrix.
///
/// Columns are regrouped by residue class mod beta, class b contributing
/// columns b, b+beta, b+2*beta, ... in that order. Rows are regrouped by
/// residue class mod gamma; within a class they follow the shift orbit
/// a, a+row_step, a+2*row_step, ... (mod rows), where row_step is the
/// smallest multiple of gamma for which shifting rows by row_step and
/// columns by beta leaves the matrix invariant. That ordering is what makes
/// the blocks of the regrouped matrix come out circulant. When no such
/// shift invariance exists, row_step falls back to gamma (plain ascending
/// order) and a later circulant decomposition will fail loudly.
struct QcRearrangement {
    SparseBitMatrix matrix;                // the regrouped matrix
    std::vector<std::uint32_t> row_perm;   // row_perm[new] = old row index
    std::vector<std::uint32_t> col_perm;   // col_perm[new] = old column index
    std::int64_t row_step = 0;             // detected shift, multiple of gamma
    bool shift_invariant = false;          // whether a true invariance was found
};

QcRearrangement qc_rearrange(const SparseBitMatrix& h, std::int64_t beta, std::int64_t gamma);

/// Undo a rearrangement: returns the matrix with original row/column order.
SparseBitMatrix qc_restore(const QcRearrangement& qc);

/// Grid of circulant blocks; block (i,j) is represented by its first row.
struct CirculantDecomposition {
    std::int64_t grid_rows = 0;   // gamma
    std::int64_t grid_cols = 0;   // beta
    std::int64_t block_size = 0;  // square blocks of this dimension
    // first_rows[i][j] = sorted in-block column indices of block (i,j) row 0
    std::vector<std::vector<std::vector<std::uint32_t>>> first_rows;
};

/// Splits a matrix into grid_rows x grid_cols square blocks and verifies each
/// is circulant (row k equals row 0 cyclically right-shifted by k). Throws
/// std::runtime_error naming the offending block otherwise.
CirculantDecomposition decompose_circulant(const SparseBitMatrix& m,
                                           std::int64_t grid_rows,
                                           std::int64_t grid_cols);

struct WeightMatrix {
    std::int64_t rows = 0, cols = 0;
    std::vector<std::vector<int>> w;
    bool operator==(const WeightMatrix&) const = default;
};

/// Row weight of each circulant block.
WeightMatrix weight_matrix(const CirculantDecomposition& dec);

/// MacKay alist text format. Round-trips bit-exactly.
std::string to_alist(const SparseBitMatrix& m);
SparseBitMatrix from_alist(const std::string& text);

}  // namespace qppldpc
