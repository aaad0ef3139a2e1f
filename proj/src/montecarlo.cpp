#include "qppldpc/montecarlo.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>
#include <thread>

namespace qppldpc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t frame_seed(std::uint64_t master, std::size_t point, std::int64_t frame) {
    return splitmix64(master ^ splitmix64(0x9E3779B97F4A7C15ULL * (point + 1)) ^
                      splitmix64(0xC2B2AE3D27D4EB4FULL * static_cast<std::uint64_t>(frame + 1)));
}

/// Gaussian samples with an explicit Box-Muller transform so the stream is
/// pinned down by the engine alone (std::normal_distribution is not
/// implementation-defined-free).
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : eng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * M_PI * u2;
        spare_ = mag * std::sin(ang);
        have_spare_ = true;
        return mag * std::cos(ang);
    }

private:
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

struct FrameResult {
    FrameClass cls;
    int iterations = 0;
};

FrameResult run_frame(BpDecoder& dec, std::vector<double>& llr, std::uint64_t seed,
                      double sigma, double scale, int max_iters) {
    GaussianSource gauss(seed);
    for (auto& l : llr) l = scale * (1.0 + sigma * gauss.next());
    const DecodeResult r = dec.decode(llr, max_iters);
    return {classify_frame(r), r.iterations};
}

}  // namespace

FrameClass classify_frame(const DecodeResult& result) {
    FrameClass fc;
    fc.weight = 0;
    for (auto b : result.word) fc.weight += b;
    fc.syndrome_weight = result.syndrome_weight;
    if (result.converged)
        fc.outcome = fc.weight == 0 ? FrameOutcome::success : FrameOutcome::undetected;
    else
        fc.outcome = FrameOutcome::detected;
    return fc;
}

double awgn_sigma_squared(double ebno_db, double rate) {
    return 1.0 / (2.0 * rate * std::pow(10.0, ebno_db / 10.0));
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

SimStats simulate(const SparseBitMatrix& h, const SimConfig& config) {
    if (config.ebno_db.empty()) throw std::invalid_argument("simulate: no Eb/N0 points");
    if (config.rate <= 0 || config.rate > 1) throw std::invalid_argument("simulate: rate out of range");
    if (config.max_frames < 1) throw std::invalid_argument("simulate: max_frames must be positive");

    const std::int64_t n = h.cols();
    const int workers = std::max(1, config.workers);
    SimStats stats;

    for (std::size_t point = 0; point < config.ebno_db.size(); ++point) {
        const double ebno = config.ebno_db[point];
        const double sigma2 = awgn_sigma_squared(ebno, config.rate);
        const double sigma = std::sqrt(sigma2);
        const double scale = 2.0 / sigma2;  // llr = 2*y/sigma^2

        PointStats ps;
        ps.ebno_db = ebno;
        const auto t0 = std::chrono::steady_clock::now();

        const std::int64_t chunk = workers == 1 ? 1024 : static_cast<std::int64_t>(workers) * 64;
        std::vector<FrameResult> results(static_cast<std::size_t>(chunk));

        std::vector<std::unique_ptr<BpDecoder>> decoders;
        std::vector<std::vector<double>> llrs(static_cast<std::size_t>(workers),
                                              std::vector<double>(static_cast<std::size_t>(n)));
        for (int w = 0; w < workers; ++w) decoders.emplace_back(std::make_unique<BpDecoder>(h));

        std::int64_t next_frame = 0;
        bool stopped = false;
        while (!stopped && next_frame < config.max_frames) {
            const std::int64_t count = std::min(chunk, config.max_frames - next_frame);
            auto work = [&](int tid) {
                for (std::int64_t i = tid; i < count; i += workers) {
                    results[static_cast<std::size_t>(i)] =
                        run_frame(*decoders[static_cast<std::size_t>(tid)],
                                  llrs[static_cast<std::size_t>(tid)],
                                  frame_seed(config.seed, point, next_frame + i), sigma, scale,
                                  config.max_iters);
                }
            };
            if (workers == 1) {
                work(0);
            } else {
                std::vector<std::thread> pool;
                for (int tid = 0; tid < workers; ++tid) pool.emplace_back(work, tid);
                for (auto& th : pool) th.join();
            }

            // In-order merge with exact truncation at the stop condition.
            for (std::int64_t i = 0; i < count; ++i) {
                const auto& fr = results[static_cast<std::size_t>(i)];
                ++ps.frames;
                ps.bit_errors += fr.cls.weight;
                switch (fr.cls.outcome) {
                    case FrameOutcome::success:
                        break;
                    case FrameOutcome::detected:
                        ++ps.frame_errors;
                        ++ps.detected;
                        if (config.collect_near_codewords)
                            stats.near_codewords.push_back(
                                {ebno, next_frame + i, fr.cls.weight, fr.cls.syndrome_weight});
                        break;
                    case FrameOutcome::undetected:
                        ++ps.frame_errors;
                        ++ps.undetected;
                        ps.undetected_weights.push_back(fr.cls.weight);
                        break;
                }
                if (ps.frame_errors >= config.stop_frame_errors) {
                    stopped = true;
                    break;
                }
            }
            next_frame += count;
        }
        ps.partial = !stopped;
        ps.elapsed_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        stats.points.push_back(std::move(ps));
    }
    return stats;
}

std::int64_t uncoded_bpsk_errors(double ebno_db, std::int64_t bits, std::uint64_t seed) {
    const double sigma = std::sqrt(awgn_sigma_squared(ebno_db, 1.0));
    GaussianSource gauss(splitmix64(seed));
    std::int64_t errors = 0;
    for (std::int64_t i = 0; i < bits; ++i)
        if (1.0 + sigma * gauss.next() < 0.0) ++errors;
    return errors;
}

}  // namespace qppldpc
