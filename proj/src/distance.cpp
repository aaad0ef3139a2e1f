#include "qppldpc/distance.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace qppldpc {

std::int64_t permanent(const IntMatrix& m) {
    const std::size_t dim = m.size();
    if (dim == 0) return 1;
    if (dim > 20) throw std::invalid_argument("permanent: dimension above the 2^m budget");
    for (const auto& row : m)
        if (row.size() != dim) throw std::invalid_argument("permanent: matrix not square");

    // Ryser with Gray code: sum over column subsets of (-1)^{m-|S|} prod row sums.
    std::vector<std::int64_t> row_sum(dim, 0);
    std::int64_t total = 0;
    const std::uint32_t limit = std::uint32_t{1} << dim;
    std::uint32_t gray = 0;
    for (std::uint32_t k = 1; k < limit; ++k) {
        const std::uint32_t next = k ^ (k >> 1);
        const std::uint32_t toggled = gray ^ next;
        const int col = std::countr_zero(toggled);
        const bool added = next & toggled;
        for (std::size_t i = 0; i < dim; ++i)
            row_sum[i] += added ? m[i][static_cast<std::size_t>(col)]
                                : -m[i][static_cast<std::size_t>(col)];
        gray = next;
        std::int64_t prod = 1;
        for (std::size_t i = 0; i < dim && prod; ++i) prod *= row_sum[i];
        const int popcount = std::popcount(next);
        total += ((dim - static_cast<std::size_t>(popcount)) & 1) ? -prod : prod;
    }
    return total;
}

namespace {

// All drop-one permanents of the rows x (rows+1) column selection at once:
// subset DP over used-column masks, summing injective row-to-column products.
std::int64_t psi_dp(const WeightMatrix& a, const std::vector<int>& s) {
    const int rows = static_cast<int>(a.rows);
    const int width = rows + 1;
    std::vector<std::int64_t> g(std::size_t{1} << width, 0);
    g[0] = 1;
    const std::uint32_t full = (std::uint32_t{1} << width) - 1;
    for (std::uint32_t mask = 0; mask < full; ++mask) {
        if (!g[mask]) continue;
        const int row = std::popcount(mask);
        if (row >= rows) continue;
        const auto& arow = a.w[static_cast<std::size_t>(row)];
        std::uint32_t free = full & ~mask;
        while (free) {
            const int j = std::countr_zero(free);
            free &= free - 1;
            const std::int64_t entry = arow[static_cast<std::size_t>(s[static_cast<std::size_t>(j)])];
            if (entry) g[mask | (std::uint32_t{1} << j)] += g[mask] * entry;
        }
    }
    std::int64_t total = 0;
    for (std::uint32_t mask = 0; mask <= full; ++mask)
        if (std::popcount(mask) == rows) total += g[mask];
    return total;
}

struct Enumerator {
    const WeightMatrix& a;
    const DminOptions& opts;
    int take;  // rows + 1
    bool collect_zero_sets;
    std::vector<std::vector<bool>> in_support;
    std::vector<std::vector<int>> support_tail;  // per row: support count in [pos, cols)

    std::optional<std::int64_t> best;
    std::vector<int> best_cols;
    std::int64_t examined = 0;
    std::vector<std::vector<int>> zero_psi_sets;
    bool budget_hit = false;

    Enumerator(const WeightMatrix& a_, const DminOptions& o, bool collect_zeros)
        : a(a_), opts(o), collect_zero_sets(collect_zeros) {
        take = static_cast<int>(a.rows) + 1;
        in_support.assign(static_cast<std::size_t>(a.rows),
                          std::vector<bool>(static_cast<std::size_t>(a.cols), false));
        support_tail.assign(static_cast<std::size_t>(a.rows),
                            std::vector<int>(static_cast<std::size_t>(a.cols) + 1, 0));
        for (std::int64_t i = 0; i < a.rows; ++i) {
            for (std::int64_t j = 0; j < a.cols; ++j)
                in_support[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    a.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0;
            for (std::int64_t j = a.cols - 1; j >= 0; --j)
                support_tail[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    support_tail[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) + 1] +
                    (in_support[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ? 1 : 0);
        }
    }

    void run() {
        std::vector<int> chosen;
        std::vector<int> hits(static_cast<std::size_t>(a.rows), 0);
        recurse(chosen, hits, 0);
    }

    void recurse(std::vector<int>& chosen, std::vector<int>& hits, int pos) {
        if (budget_hit) return;
        if (static_cast<int>(chosen.size()) == take) {
            ++examined;
            if (opts.max_sets >= 0 && examined > opts.max_sets) {
                budget_hit = true;
                return;
            }
            bool zero_row = false;
            for (std::int64_t i = 0; i < a.rows && !zero_row; ++i)
                zero_row = hits[static_cast<std::size_t>(i)] == 0;
            if (zero_row) {
                if (collect_zero_sets) zero_psi_sets.push_back(chosen);
                return;
            }
            const std::int64_t value = psi_dp(a, chosen);
            if (value == 0) {
                if (collect_zero_sets) zero_psi_sets.push_back(chosen);
            } else if (!best || value < *best) {
                best = value;
                best_cols = chosen;
            }
            return;
        }
        const int remaining = take - static_cast<int>(chosen.size());
        if (a.cols - pos < remaining) return;
        // Rows untouched so far must still be coverable from the tail; without
        // that every completion has psi = 0 (and, unless collecting those
        // sets, the subtree is dead weight).
        if (!collect_zero_sets) {
            for (std::int64_t i = 0; i < a.rows; ++i) {
                if (hits[static_cast<std::size_t>(i)] == 0 &&
                    support_tail[static_cast<std::size_t>(i)][static_cast<std::size_t>(pos)] == 0)
                    return;
            }
        }
        for (int c = pos; c <= static_cast<int>(a.cols) - remaining; ++c) {
            chosen.push_back(c);
            for (std::int64_t i = 0; i < a.rows; ++i)
                if (in_support[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)])
                    ++hits[static_cast<std::size_t>(i)];
            recurse(chosen, hits, c + 1);
            for (std::int64_t i = 0; i < a.rows; ++i)
                if (in_support[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)])
                    --hits[static_cast<std::size_t>(i)];
            chosen.pop_back();
            if (budget_hit) return;
        }
    }
};

WeightMatrix submatrix_without_zero_rows(const WeightMatrix& a, const std::vector<int>& cols,
                                         std::vector<int>& zero_rows) {
    WeightMatrix sub;
    zero_rows.clear();
    for (std::int64_t i = 0; i < a.rows; ++i) {
        std::vector<int> row;
        row.reserve(cols.size());
        bool all_zero = true;
        for (int c : cols) {
            const int v = a.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            row.push_back(v);
            all_zero = all_zero && v == 0;
        }
        if (all_zero)
            zero_rows.push_back(static_cast<int>(i));
        else
            sub.w.push_back(std::move(row));
    }
    sub.rows = static_cast<std::int64_t>(sub.w.size());
    sub.cols = static_cast<std::int64_t>(cols.size());
    return sub;
}

BoundResult bound_impl(const WeightMatrix& a, const DminOptions& opts, int depth,
                       std::vector<RecursionEvent>* events) {
    if (a.rows < 1) throw std::invalid_argument("dmin bound: weight matrix has no rows");
    if (a.cols < a.rows + 1)
        throw std::invalid_argument("dmin bound: need more columns than rows");
    if (a.rows + 1 > 20)
        throw std::invalid_argument("dmin bound: row count above the 2^m budget");

    Enumerator en(a, opts, opts.recursive);
    en.run();

    BoundResult res;
    res.bound = en.best;
    res.columns = en.best_cols;
    res.sets_examined = en.examined;

    if (opts.recursive) {
        for (const auto& s : en.zero_psi_sets) {
            std::vector<int> zero_rows;
            WeightMatrix sub = submatrix_without_zero_rows(a, s, zero_rows);
            if (events) {
                RecursionEvent ev;
                ev.depth = depth;
                ev.parent_columns = s;
                ev.zero_rows = zero_rows;
                ev.submatrix = sub;
                events->push_back(ev);
            }
            if (sub.rows < 1 || sub.cols < sub.rows + 1) continue;
            BoundResult inner = bound_impl(sub, opts, depth + 1, events);
            res.sets_examined += inner.sets_examined;
            if (inner.bound && (!res.bound || *inner.bound < *res.bound)) {
                res.bound = inner.bound;
                res.columns.clear();
                for (int c : inner.columns) res.columns.push_back(s[static_cast<std::size_t>(c)]);
                res.improved_by_recursion = true;
            }
        }
    }
    return res;
}

}  // namespace

std::int64_t psi(const WeightMatrix& a, const std::vector<int>& s) {
    if (static_cast<std::int64_t>(s.size()) != a.rows + 1)
        throw std::invalid_argument("psi: |S| must equal rows + 1");
    for (int c : s)
        if (c < 0 || c >= a.cols) throw std::invalid_argument("psi: column index out of range");
    if (a.rows + 1 > 20) throw std::invalid_argument("psi: row count above the 2^m budget");
    return psi_dp(a, s);
}

BoundResult dmin_upper_bound(const WeightMatrix& a, const DminOptions& opts) {
    DminOptions base = opts;
    base.recursive = false;
    return bound_impl(a, base, 0, nullptr);
}

BoundResult dmin_recursive(const WeightMatrix& a, const DminOptions& opts) {
    DminOptions rec = opts;
    rec.recursive = true;
    std::vector<RecursionEvent> events;
    BoundResult res = bound_impl(a, rec, 0, &events);
    res.events = std::move(events);
    return res;
}

namespace {

// Binary polynomials modulo x^m - 1, packed into 64-bit words.
struct RingPoly {
    std::vector<std::uint64_t> w;

    static RingPoly zero(std::int64_t m) {
        RingPoly p;
        p.w.assign(static_cast<std::size_t>((m + 63) / 64), 0);
        return p;
    }
    bool is_zero() const {
        for (auto v : w)
            if (v) return false;
        return true;
    }
    void set(std::int64_t bit) { w[static_cast<std::size_t>(bit >> 6)] |= std::uint64_t{1} << (bit & 63); }
    bool get(std::int64_t bit) const {
        return (w[static_cast<std::size_t>(bit >> 6)] >> (bit & 63)) & 1;
    }
    void operator^=(const RingPoly& o) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] ^= o.w[i];
    }
};

RingPoly ring_mul(const RingPoly& a, const RingPoly& b, std::int64_t m) {
    RingPoly res = RingPoly::zero(m);
    for (std::int64_t i = 0; i < m; ++i) {
        if (!a.get(i)) continue;
        // res ^= b rotated left by i (mod x^m - 1)
        for (std::int64_t j = 0; j < m; ++j)
            if (b.get(j)) {
                const std::int64_t k = i + j >= m ? i + j - m : i + j;
                res.w[static_cast<std::size_t>(k >> 6)] ^= std::uint64_t{1} << (k & 63);
            }
    }
    return res;
}

RingPoly ring_det(std::vector<std::vector<RingPoly>>& mat, std::size_t row, std::vector<int>& cols,
                  std::int64_t m) {
    if (cols.size() == 1) return mat[row][static_cast<std::size_t>(cols[0])];
    RingPoly total = RingPoly::zero(m);
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const int c = cols[j];
        if (mat[row][static_cast<std::size_t>(c)].is_zero()) continue;
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(j));
        const RingPoly minor = ring_det(mat, row + 1, cols, m);
        cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(j), c);
        if (!minor.is_zero()) total ^= ring_mul(mat[row][static_cast<std::size_t>(c)], minor, m);
    }
    return total;
}

}  // namespace

std::vector<std::vector<std::uint32_t>> cofactor_codewords(const SparseBitMatrix& h,
                                                           const QcRearrangement& qc,
                                                           const CirculantDecomposition& dec,
                                                           std::size_t max_results) {
    const std::int64_t grid_rows = dec.grid_rows, grid_cols = dec.grid_cols, m = dec.block_size;
    if (grid_cols < grid_rows + 1) throw std::invalid_argument("cofactor_codewords: need more block columns than rows");
    if (grid_rows > 8) throw std::invalid_argument("cofactor_codewords: grid too tall for determinant expansion");

    // Reciprocal block polynomials: the parity conditions of the regrouped
    // matrix become coefficient identities of H(x) * C(x) over F2[x]/(x^m-1)
    // when each block's first row enters with inverted exponents.
    std::vector<std::vector<RingPoly>> hp(static_cast<std::size_t>(grid_rows));
    for (std::int64_t a = 0; a < grid_rows; ++a) {
        hp[static_cast<std::size_t>(a)].assign(static_cast<std::size_t>(grid_cols), RingPoly::zero(m));
        for (std::int64_t b = 0; b < grid_cols; ++b)
            for (auto u : dec.first_rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])
                hp[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].set((m - u) % m);
    }

    std::vector<std::vector<std::uint32_t>> results;
    std::vector<int> sel(static_cast<std::size_t>(grid_rows) + 1);
    for (std::size_t i = 0; i < sel.size(); ++i) sel[i] = static_cast<int>(i);
    auto advance = [&]() {
        std::int64_t i = static_cast<std::int64_t>(sel.size()) - 1;
        while (i >= 0 && sel[static_cast<std::size_t>(i)] ==
                             static_cast<int>(grid_cols - static_cast<std::int64_t>(sel.size()) + i))
            --i;
        if (i < 0) return false;
        ++sel[static_cast<std::size_t>(i)];
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < sel.size(); ++j)
            sel[j] = sel[j - 1] + 1;
        return true;
    };

    std::set<std::vector<std::uint32_t>> seen;
    do {
        // Zero-row prefilter: a block row with no support in S forces zero cofactors.
        bool zero_row = false;
        for (std::int64_t a = 0; a < grid_rows && !zero_row; ++a) {
            bool any = false;
            for (int c : sel) any = any || !hp[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)].is_zero();
            zero_row = !any;
        }
        if (zero_row) continue;

        std::vector<std::uint32_t> support;
        for (std::size_t drop = 0; drop < sel.size(); ++drop) {
            std::vector<int> cols;
            for (std::size_t j = 0; j < sel.size(); ++j)
                if (j != drop) cols.push_back(sel[j]);
            const RingPoly cw = ring_det(hp, 0, cols, m);
            for (std::int64_t t = 0; t < m; ++t)
                if (cw.get(t))
                    support.push_back(qc.col_perm[static_cast<std::size_t>(sel[drop]) *
                                                      static_cast<std::size_t>(m) +
                                                  static_cast<std::size_t>(t)]);
        }
        if (support.empty()) continue;
        std::sort(support.begin(), support.end());

        // Verify against the original matrix before reporting.
        bool valid = true;
        for (std::int64_t c = 0; c < h.rows() && valid; ++c) {
            int parity = 0;
            for (auto v : h.row(c))
                parity ^= std::binary_search(support.begin(), support.end(), v) ? 1 : 0;
            valid = parity == 0;
        }
        if (valid && seen.insert(support).second) results.push_back(std::move(support));
    } while (advance());

    std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    if (results.size() > max_results) results.resize(max_results);
    return results;
}

}  // namespace qppldpc
