#pragma once

#include <cstdint>
#include <vector>

#include "qppldpc/decoder.hpp"
#include "qppldpc/gf2.hpp"

namespace qppldpc {

/// BPSK over AWGN, all-zero codeword transmitted (the code is linear and the
/// channel symmetric, so error statistics are codeword independent; wrong
/// convergences remain visible as nonzero codewords).
struct SimConfig {
    std::vector<double> ebno_db;
    double rate = 0.5;  // k/n, from the rank-derived dimension
    std::int64_t max_frames = 1'000'000;
    std::int64_t stop_frame_errors = 50;
    int max_iters = 80;
    std::uint64_t seed = 1;
    int workers = 1;
    bool collect_near_codewords = true;
};

enum class FrameOutcome { success, detected, undetected };

struct FrameClass {
    FrameOutcome outcome = FrameOutcome::success;
    int weight = 0;           // Hamming weight of the hard decision
    int syndrome_weight = 0;  // zero for success/undetected
};

/// Classification of a decode of an all-zero-codeword transmission.
FrameClass classify_frame(const DecodeResult& result);

struct NearCodewordEvent {
    double ebno_db = 0;
    std::int64_t frame = 0;
    int w = 0;  // near-codeword weight
    int s = 0;  // syndrome weight
};

struct PointStats {
    double ebno_db = 0;
    std::int64_t frames = 0;
    std::int64_t bit_errors = 0;
    std::int64_t frame_errors = 0;
    std::int64_t detected = 0;
    std::int64_t undetected = 0;
    std::vector<int> undetected_weights;  // feed these to the distance bounds
    double elapsed_sec = 0;
    bool partial = false;  // max_frames hit before the frame-error target

    double ber(std::int64_t n) const {
        return frames ? static_cast<double>(bit_errors) / (static_cast<double>(frames) * n) : 0.0;
    }
    double fer() const {
        return frames ? static_cast<double>(frame_errors) / static_cast<double>(frames) : 0.0;
    }
};

struct SimStats {
    std::vector<PointStats> points;
    std::vector<NearCodewordEvent> near_codewords;
};

/// Runs every Eb/N0 point until stop_frame_errors frame errors or max_frames.
/// Bit-identical output for a fixed seed regardless of worker count: frame i
/// always consumes the stream seeded by (seed, point, i), and the stop rule
/// truncates at the exact frame where the error target is reached.
SimStats simulate(const SparseBitMatrix& h, const SimConfig& config);

/// Noise variance for a rate-R BPSK system at the given Eb/N0.
double awgn_sigma_squared(double ebno_db, double rate);

/// Gaussian tail probability Q(x).
double q_function(double x);

/// Sign-decision BER reference run (rate 1, no code).
std::int64_t uncoded_bpsk_errors(double ebno_db, std::int64_t bits, std::uint64_t seed);

}  // namespace qppldpc
