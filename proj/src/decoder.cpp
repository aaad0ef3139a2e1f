#include "qppldpc/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qppldpc {

namespace {

inline double clamp_llr(double x) {
    return std::clamp(x, -BpDecoder::kLlrClamp, BpDecoder::kLlrClamp);
}

// Exact pairwise check-node combination:
// 2*atanh(tanh(a/2)*tanh(b/2)) in a form stable for large |a|, |b|.
inline double boxplus(double a, double b) {
    const double sgn = ((a < 0) != (b < 0)) ? -1.0 : 1.0;
    const double mag = std::min(std::fabs(a), std::fabs(b));
    return sgn * mag + std::log1p(std::exp(-std::fabs(a + b))) -
           std::log1p(std::exp(-std::fabs(a - b)));
}

}  // namespace

BpDecoder::BpDecoder(const SparseBitMatrix& h) : n_(h.cols()), r_(h.rows()) {
    const std::int64_t edges = h.nnz();
    row_offset_.resize(static_cast<std::size_t>(r_) + 1);
    edge_var_.reserve(static_cast<std::size_t>(edges));
    std::uint32_t off = 0;
    for (std::int64_t c = 0; c < r_; ++c) {
        row_offset_[static_cast<std::size_t>(c)] = off;
        for (auto v : h.row(c)) edge_var_.push_back(v);
        off += static_cast<std::uint32_t>(h.row(c).size());
    }
    row_offset_[static_cast<std::size_t>(r_)] = off;

    var_offset_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (auto v : edge_var_) ++var_offset_[static_cast<std::size_t>(v) + 1];
    for (std::int64_t v = 0; v < n_; ++v)
        var_offset_[static_cast<std::size_t>(v) + 1] += var_offset_[static_cast<std::size_t>(v)];
    var_edges_.resize(static_cast<std::size_t>(edges));
    {
        std::vector<std::uint32_t> fill(var_offset_.begin(), var_offset_.end() - 1);
        for (std::uint32_t e = 0; e < edges; ++e)
            var_edges_[fill[edge_var_[e]]++] = e;
    }

    v2c_.resize(static_cast<std::size_t>(edges));
    c2v_.resize(static_cast<std::size_t>(edges));
    std::size_t max_deg = 0;
    for (std::int64_t c = 0; c < r_; ++c)
        max_deg = std::max<std::size_t>(max_deg, row_offset_[c + 1] - row_offset_[c]);
    fwd_.resize(max_deg);
    bwd_.resize(max_deg);
    total_.resize(static_cast<std::size_t>(n_));
    hard_.resize(static_cast<std::size_t>(n_));
}

DecodeResult BpDecoder::decode(std::span<const double> channel_llrs, int max_iters,
                               bool record_trace, int stall_window) {
    if (static_cast<std::int64_t>(channel_llrs.size()) != n_)
        throw std::invalid_argument("BpDecoder::decode: LLR length mismatch");
    if (max_iters < 1) throw std::invalid_argument("BpDecoder::decode: max_iters must be >= 1");
    int last_syn = -1, stuck = 0;

    for (std::int64_t v = 0; v < n_; ++v)
        for (std::uint32_t i = var_offset_[v]; i < var_offset_[v + 1]; ++i)
            v2c_[var_edges_[i]] = channel_llrs[static_cast<std::size_t>(v)];

    DecodeResult res;
    for (int iter = 1; iter <= max_iters; ++iter) {
        // Check update, forward/backward partial combinations per row.
        for (std::int64_t c = 0; c < r_; ++c) {
            const std::uint32_t lo = row_offset_[c], hi = row_offset_[c + 1];
            const std::uint32_t deg = hi - lo;
            if (deg == 0) continue;
            if (deg == 1) {
                c2v_[lo] = 0.0;  // degree-1 check pins nothing through messages
                continue;
            }
            fwd_[0] = clamp_llr(v2c_[lo]);
            bwd_[deg - 1] = clamp_llr(v2c_[hi - 1]);
            for (std::uint32_t j = 1; j < deg; ++j) {
                fwd_[j] = boxplus(fwd_[j - 1], clamp_llr(v2c_[lo + j]));
                bwd_[deg - 1 - j] = boxplus(bwd_[deg - j], clamp_llr(v2c_[hi - 1 - j]));
            }
            c2v_[lo] = bwd_[1];
            c2v_[hi - 1] = fwd_[deg - 2];
            for (std::uint32_t j = 1; j + 1 < deg; ++j)
                c2v_[lo + j] = boxplus(fwd_[j - 1], bwd_[j + 1]);
        }

        // Variable update and hard decision.
        for (std::int64_t v = 0; v < n_; ++v) {
            double total = channel_llrs[static_cast<std::size_t>(v)];
            for (std::uint32_t i = var_offset_[v]; i < var_offset_[v + 1]; ++i)
                total += c2v_[var_edges_[i]];
            total_[static_cast<std::size_t>(v)] = total;
            hard_[static_cast<std::size_t>(v)] = total <= 0.0 ? 1 : 0;
            for (std::uint32_t i = var_offset_[v]; i < var_offset_[v + 1]; ++i)
                v2c_[var_edges_[i]] = total - c2v_[var_edges_[i]];
        }

        int syn = 0;
        for (std::int64_t c = 0; c < r_; ++c) {
            unsigned parity = 0;
            for (std::uint32_t i = row_offset_[c]; i < row_offset_[c + 1]; ++i)
                parity ^= hard_[edge_var_[i]];
            syn += static_cast<int>(parity);
        }
        if (record_trace) res.syndrome_trace.push_back(syn);
        res.iterations = iter;
        res.syndrome_weight = syn;
        if (syn == 0) {
            res.converged = true;
            break;
        }
        if (stall_window > 0) {
            stuck = syn == last_syn ? stuck + 1 : 0;
            if (stuck >= stall_window) break;
            last_syn = syn;
        }
    }
    res.word.assign(hard_.begin(), hard_.end());
    return res;
}

int syndrome_weight(const SparseBitMatrix& h, std::span<const std::uint8_t> word) {
    if (static_cast<std::int64_t>(word.size()) != h.cols())
        throw std::invalid_argument("syndrome_weight: word length mismatch");
    int weight = 0;
    for (std::int64_t c = 0; c < h.rows(); ++c) {
        unsigned parity = 0;
        for (auto v : h.row(c)) parity ^= word[v];
        weight += static_cast<int>(parity);
    }
    return weight;
}

}  // namespace qppldpc
