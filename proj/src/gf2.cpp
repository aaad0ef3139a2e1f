#include "qppldpc/gf2.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qppldpc {

SparseBitMatrix::SparseBitMatrix(std::int64_t rows, std::int64_t cols)
    : rows_(rows), cols_(cols), row_cols_(static_cast<std::size_t>(rows)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("SparseBitMatrix: negative dimension");
}

void SparseBitMatrix::insert(std::int64_t row, std::int64_t col) {
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_)
        throw std::out_of_range("SparseBitMatrix::insert: index out of range");
    auto& rc = row_cols_[static_cast<std::size_t>(row)];
    auto it = std::lower_bound(rc.begin(), rc.end(), static_cast<std::uint32_t>(col));
    if (it != rc.end() && *it == static_cast<std::uint32_t>(col))
        throw std::invalid_argument("SparseBitMatrix::insert: duplicate entry");
    rc.insert(it, static_cast<std::uint32_t>(col));
}

bool SparseBitMatrix::get(std::int64_t row, std::int64_t col) const {
    const auto& rc = row_cols_[static_cast<std::size_t>(row)];
    return std::binary_search(rc.begin(), rc.end(), static_cast<std::uint32_t>(col));
}

std::int64_t SparseBitMatrix::nnz() const {
    std::int64_t total = 0;
    for (const auto& rc : row_cols_) total += static_cast<std::int64_t>(rc.size());
    return total;
}

std::vector<std::int64_t> SparseBitMatrix::row_weights() const {
    std::vector<std::int64_t> w(static_cast<std::size_t>(rows_));
    for (std::int64_t r = 0; r < rows_; ++r)
        w[static_cast<std::size_t>(r)] = static_cast<std::int64_t>(row(r).size());
    return w;
}

std::vector<std::int64_t> SparseBitMatrix::col_weights() const {
    std::vector<std::int64_t> w(static_cast<std::size_t>(cols_), 0);
    for (const auto& rc : row_cols_)
        for (auto c : rc) ++w[c];
    return w;
}

std::vector<std::vector<std::uint32_t>> SparseBitMatrix::col_lists() const {
    std::vector<std::vector<std::uint32_t>> cols(static_cast<std::size_t>(cols_));
    for (std::int64_t r = 0; r < rows_; ++r)
        for (auto c : row(r)) cols[c].push_back(static_cast<std::uint32_t>(r));
    return cols;
}

SparseBitMatrix SparseBitMatrix::permute_rows(const std::vector<std::uint32_t>& row_perm) const {
    if (static_cast<std::int64_t>(row_perm.size()) != rows_)
        throw std::invalid_argument("permute_rows: permutation size mismatch");
    SparseBitMatrix out(rows_, cols_);
    for (std::int64_t r = 0; r < rows_; ++r)
        out.row_cols_[static_cast<std::size_t>(r)] = row_cols_[row_perm[static_cast<std::size_t>(r)]];
    return out;
}

SparseBitMatrix SparseBitMatrix::permute_cols(const std::vector<std::uint32_t>& col_perm) const {
    if (static_cast<std::int64_t>(col_perm.size()) != cols_)
        throw std::invalid_argument("permute_cols: permutation size mismatch");
    std::vector<std::uint32_t> inv(col_perm.size());
    for (std::size_t i = 0; i < col_perm.size(); ++i) inv[col_perm[i]] = static_cast<std::uint32_t>(i);
    SparseBitMatrix out(rows_, cols_);
    for (std::int64_t r = 0; r < rows_; ++r) {
        auto& rc = out.row_cols_[static_cast<std::size_t>(r)];
        rc.reserve(row(r).size());
        for (auto c : row(r)) rc.push_back(inv[c]);
        std::sort(rc.begin(), rc.end());
    }
    return out;
}

std::int64_t rank_gf2(const SparseBitMatrix& m) {
    const std::size_t words = static_cast<std::size_t>((m.cols() + 63) / 64);
    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(static_cast<std::size_t>(m.rows()));
    for (std::int64_t r = 0; r < m.rows(); ++r) {
        if (m.row(r).empty()) continue;
        std::vector<std::uint64_t> packed(words, 0);
        for (auto c : m.row(r)) packed[c >> 6] |= std::uint64_t{1} << (c & 63);
        rows.push_back(std::move(packed));
    }
    std::int64_t rank = 0;
    std::size_t pivot_row = 0;
    for (std::int64_t col = 0; col < m.cols() && pivot_row < rows.size(); ++col) {
        const std::size_t w = static_cast<std::size_t>(col >> 6);
        const std::uint64_t bit = std::uint64_t{1} << (col & 63);
        std::size_t sel = pivot_row;
        while (sel < rows.size() && !(rows[sel][w] & bit)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[pivot_row], rows[sel]);
        for (std::size_t i = pivot_row + 1; i < rows.size(); ++i) {
            if (rows[i][w] & bit)
                for (std::size_t k = w; k < words; ++k) rows[i][k] ^= rows[pivot_row][k];
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

namespace {

// Tests whether shifting rows by s and columns by beta (cyclically) maps the
// matrix onto itself.
bool shift_invariant(const SparseBitMatrix& h, std::int64_t s, std::int64_t beta) {
    const std::int64_t r = h.rows(), n = h.cols();
    for (std::int64_t c = 0; c < r; ++c) {
        const auto& src = h.row(c);
        const auto& dst = h.row((c + s) % r);
        if (src.size() != dst.size()) return false;
        for (auto v : src) {
            if (!std::binary_search(dst.begin(), dst.end(),
                                    static_cast<std::uint32_t>((v + beta) % n)))
                return false;
        }
    }
    return true;
}

}  // namespace

QcRearrangement qc_rearrange(const SparseBitMatrix& h, std::int64_t beta, std::int64_t gamma) {
    const std::int64_t r = h.rows(), n = h.cols();
    if (beta < 1 || n % beta) throw std::invalid_argument("qc_rearrange: beta must divide column count");
    if (gamma < 1 || r % gamma) throw std::invalid_argument("qc_rearrange: gamma must divide row count");

    QcRearrangement out;
    // Row shift detection: candidates are gamma*k with k coprime to r/gamma,
    // so that the orbit of a residue class covers the class exactly once.
    const std::int64_t classes = r / gamma;
    out.row_step = gamma;
    for (std::int64_t k = 1; k < classes; ++k) {
        if (std::gcd(k, classes) != 1) continue;
        if (shift_invariant(h, gamma * k, beta)) {
            out.row_step = gamma * k;
            out.shift_invariant = true;
            break;
        }
    }

    out.col_perm.reserve(static_cast<std::size_t>(n));
    for (std::int64_t b = 0; b < beta; ++b)
        for (std::int64_t j = 0; j < n / beta; ++j)
            out.col_perm.push_back(static_cast<std::uint32_t>(b + j * beta));

    out.row_perm.reserve(static_cast<std::size_t>(r));
    for (std::int64_t a = 0; a < gamma; ++a)
        for (std::int64_t k = 0; k < r / gamma; ++k)
            out.row_perm.push_back(static_cast<std::uint32_t>((a + k * out.row_step) % r));

    out.matrix = h.permute_rows(out.row_perm).permute_cols(out.col_perm);
    return out;
}

SparseBitMatrix qc_restore(const QcRearrangement& qc) {
    std::vector<std::uint32_t> row_inv(qc.row_perm.size()), col_inv(qc.col_perm.size());
    for (std::size_t i = 0; i < qc.row_perm.size(); ++i) row_inv[qc.row_perm[i]] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < qc.col_perm.size(); ++i) col_inv[qc.col_perm[i]] = static_cast<std::uint32_t>(i);
    return qc.matrix.permute_rows(row_inv).permute_cols(col_inv);
}

CirculantDecomposition decompose_circulant(const SparseBitMatrix& m,
                                           std::int64_t grid_rows, std::int64_t grid_cols) {
    if (grid_rows < 1 || m.rows() % grid_rows)
        throw std::invalid_argument("decompose_circulant: grid rows must divide matrix rows");
    if (grid_cols < 1 || m.cols() % grid_cols)
        throw std::invalid_argument("decompose_circulant: grid cols must divide matrix cols");
    const std::int64_t br = m.rows() / grid_rows;
    const std::int64_t bc = m.cols() / grid_cols;
    if (br != bc)
        throw std::invalid_argument("decompose_circulant: blocks are not square");

    CirculantDecomposition dec;
    dec.grid_rows = grid_rows;
    dec.grid_cols = grid_cols;
    dec.block_size = br;
    dec.first_rows.assign(static_cast<std::size_t>(grid_rows),
                          std::vector<std::vector<std::uint32_t>>(static_cast<std::size_t>(grid_cols)));

    for (std::int64_t a = 0; a < grid_rows; ++a) {
        const auto& row0 = m.row(a * br);
        for (auto c : row0) dec.first_rows[static_cast<std::size_t>(a)][c / bc].push_back(c % bc);
    }

    // Structural check: every entry must reappear shifted by (1,1) inside its block.
    for (std::int64_t a = 0; a < grid_rows; ++a) {
        for (std::int64_t i = 0; i < br; ++i) {
            const auto& row = m.row(a * br + i);
            const auto& next = m.row(a * br + (i + 1) % br);
            for (auto c : row) {
                const std::int64_t b = c / bc, j = c % bc;
                const std::uint32_t shifted = static_cast<std::uint32_t>(b * bc + (j + 1) % bc);
                if (!std::binary_search(next.begin(), next.end(), shifted)) {
                    throw std::runtime_error("decompose_circulant: block (" + std::to_string(a) +
                                             "," + std::to_string(b) + ") is not circulant");
                }
            }
        }
    }
    return dec;
}

WeightMatrix weight_matrix(const CirculantDecomposition& dec) {
    WeightMatrix wm;
    wm.rows = dec.grid_rows;
    wm.cols = dec.grid_cols;
    wm.w.assign(static_cast<std::size_t>(dec.grid_rows),
                std::vector<int>(static_cast<std::size_t>(dec.grid_cols), 0));
    for (std::int64_t a = 0; a < dec.grid_rows; ++a)
        for (std::int64_t b = 0; b < dec.grid_cols; ++b)
            wm.w[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                static_cast<int>(dec.first_rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].size());
    return wm;
}

std::string to_alist(const SparseBitMatrix& m) {
    const auto cols = m.col_lists();
    std::int64_t max_col = 0, max_row = 0;
    for (const auto& c : cols) max_col = std::max<std::int64_t>(max_col, static_cast<std::int64_t>(c.size()));
    for (std::int64_t r = 0; r < m.rows(); ++r)
        max_row = std::max<std::int64_t>(max_row, static_cast<std::int64_t>(m.row(r).size()));

    std::ostringstream os;
    os << m.cols() << ' ' << m.rows() << '\n';
    os << max_col << ' ' << max_row << '\n';
    for (std::int64_t c = 0; c < m.cols(); ++c)
        os << cols[static_cast<std::size_t>(c)].size() << (c + 1 < m.cols() ? ' ' : '\n');
    for (std::int64_t r = 0; r < m.rows(); ++r)
        os << m.row(r).size() << (r + 1 < m.rows() ? ' ' : '\n');
    for (std::int64_t c = 0; c < m.cols(); ++c) {
        const auto& list = cols[static_cast<std::size_t>(c)];
        for (std::int64_t i = 0; i < max_col; ++i) {
            os << (i < static_cast<std::int64_t>(list.size()) ? list[static_cast<std::size_t>(i)] + 1 : 0)
               << (i + 1 < max_col ? ' ' : '\n');
        }
    }
    for (std::int64_t r = 0; r < m.rows(); ++r) {
        const auto& list = m.row(r);
        for (std::int64_t i = 0; i < max_row; ++i) {
            os << (i < static_cast<std::int64_t>(list.size()) ? list[static_cast<std::size_t>(i)] + 1 : 0)
               << (i + 1 < max_row ? ' ' : '\n');
        }
    }
    return os.str();
}

SparseBitMatrix from_alist(const std::string& text) {
    std::istringstream is(text);
    std::int64_t n = 0, r = 0, max_col = 0, max_row = 0;
    if (!(is >> n >> r >> max_col >> max_row))
        throw std::invalid_argument("from_alist: malformed header");
    if (n < 1 || r < 1) throw std::invalid_argument("from_alist: bad dimensions");
    std::vector<std::int64_t> col_w(static_cast<std::size_t>(n)), row_w(static_cast<std::size_t>(r));
    for (auto& w : col_w)
        if (!(is >> w)) throw std::invalid_argument("from_alist: missing column weight");
    for (auto& w : row_w)
        if (!(is >> w)) throw std::invalid_argument("from_alist: missing row weight");

    SparseBitMatrix m(r, n);
    for (std::int64_t c = 0; c < n; ++c) {
        for (std::int64_t i = 0; i < max_col; ++i) {
            std::int64_t v = 0;
            if (!(is >> v)) throw std::invalid_argument("from_alist: truncated column list");
            if (v == 0) continue;
            if (i >= col_w[static_cast<std::size_t>(c)])
                throw std::invalid_argument("from_alist: non-zero past declared column weight");
            m.insert(v - 1, c);
        }
    }
    // Row lists are redundant with the column lists; parse and cross-check.
    for (std::int64_t row = 0; row < r; ++row) {
        for (std::int64_t i = 0; i < max_row; ++i) {
            std::int64_t v = 0;
            if (!(is >> v)) throw std::invalid_argument("from_alist: truncated row list");
            if (v == 0) continue;
            if (!m.get(row, v - 1))
                throw std::invalid_argument("from_alist: row list disagrees with column lists");
        }
        if (static_cast<std::int64_t>(m.row(row).size()) != row_w[static_cast<std::size_t>(row)])
            throw std::invalid_argument("from_alist: row weight mismatch");
    }
    return m;
}

}  // namespace qppldpc
