#include "qppldpc/tanner.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace qppldpc {

CodeProfile CodeProfile::make(std::int64_t lambda, std::int64_t rho, std::int64_t n) {
    CodeProfile p;
    p.lambda = lambda;
    p.rho = rho;
    p.n = n;
    p.edges = n * lambda;
    if (rho == 0 || p.edges % rho) throw std::invalid_argument("CodeProfile: rho must divide n*lambda");
    p.r = p.edges / rho;
    p.validate();
    return p;
}

void CodeProfile::validate() const {
    if (lambda < 1 || rho < 1) throw std::invalid_argument("CodeProfile: degrees must be positive");
    if (n < 1 || r < 1) throw std::invalid_argument("CodeProfile: node counts must be positive");
    if (edges != n * lambda || edges != r * rho)
        throw std::invalid_argument("CodeProfile: N = n*lambda = r*rho violated");
}

namespace {

std::vector<std::uint32_t> group_edges_by_check(const CodeProfile& p,
                                                const std::vector<std::uint32_t>& edge_check) {
    std::vector<std::uint32_t> fill(static_cast<std::size_t>(p.r), 0);
    std::vector<std::uint32_t> grouped(static_cast<std::size_t>(p.edges));
    for (std::int64_t e = 0; e < p.edges; ++e) {
        const std::uint32_t c = edge_check[static_cast<std::size_t>(e)];
        grouped[static_cast<std::size_t>(c) * p.rho + fill[c]++] = static_cast<std::uint32_t>(e);
    }
    for (std::int64_t c = 0; c < p.r; ++c) {
        if (fill[static_cast<std::size_t>(c)] != p.rho)
            throw std::invalid_argument("TannerGraph: edge labels do not form a permutation");
    }
    return grouped;
}

}  // namespace

TannerGraph::TannerGraph(const CodeProfile& profile, const Qpp& f)
    : TannerGraph(profile, [&f](std::int64_t x) { return f.eval(x); }) {
    if (f.modulus() != profile.edges)
        throw std::invalid_argument("TannerGraph: polynomial modulus != edge count");
}

TannerGraph::TannerGraph(const CodeProfile& profile,
                         const std::function<std::int64_t(std::int64_t)>& perm)
    : profile_(profile) {
    profile_.validate();
    edge_check_.resize(static_cast<std::size_t>(profile_.edges));
    for (std::int64_t e = 0; e < profile_.edges; ++e) {
        const std::int64_t y = perm(e);
        if (y < 0 || y >= profile_.edges)
            throw std::invalid_argument("TannerGraph: permutation value out of range");
        edge_check_[static_cast<std::size_t>(e)] = static_cast<std::uint32_t>(y / profile_.rho);
    }
    check_edges_ = group_edges_by_check(profile_, edge_check_);

    // Parallel edges: two edges of one variable hitting the same check.
    std::vector<std::uint32_t> scratch;
    for (std::int64_t v = 0; v < profile_.n; ++v) {
        scratch.clear();
        for (std::int64_t a = 0; a < profile_.lambda; ++a)
            scratch.push_back(edge_check_[static_cast<std::size_t>(v * profile_.lambda + a)]);
        std::sort(scratch.begin(), scratch.end());
        for (std::size_t i = 1; i < scratch.size(); ++i) {
            if (scratch[i] == scratch[i - 1]) {
                parallel_.emplace_back(v, scratch[i]);
                while (i + 1 < scratch.size() && scratch[i + 1] == scratch[i]) ++i;
            }
        }
    }
}

SparseBitMatrix TannerGraph::to_parity_check() const {
    if (has_parallel_edges())
        throw std::invalid_argument("to_parity_check: graph has parallel edges");
    SparseBitMatrix h(profile_.r, profile_.n);
    for (std::int64_t e = 0; e < profile_.edges; ++e)
        h.insert(edge_check_[static_cast<std::size_t>(e)], var_of_edge(e));
    return h;
}

AutomorphismParams automorphism_params(const Qpp& f, const CodeProfile& profile) {
    if (f.modulus() != profile.edges)
        throw std::invalid_argument("automorphism_params: modulus mismatch");
    const std::int64_t n_edges = profile.edges;
    AutomorphismParams out;
    out.u = std::gcd(2 * f.f2(), n_edges);  // gcd(0, N) = N covers the linear case
    const std::int64_t period = n_edges / out.u;  // shifts by multiples of this commute with f
    out.t = std::lcm(period, profile.lambda) / profile.lambda;

    // Smallest m >= 1 with rho | f(m*t*lambda); guaranteed by f(N) = f(0) = 0.
    const std::int64_t step = out.t * profile.lambda;
    std::int64_t beta = 0;
    for (std::int64_t m = 1; m <= n_edges / step; ++m) {
        if (f.eval(m * step) % profile.rho == 0) {
            beta = m * out.t;
            break;
        }
    }
    if (beta == 0) throw std::logic_error("automorphism_params: no admissible shift found");
    out.beta = beta;
    if (profile.n % out.beta)
        out.beta = std::gcd(out.beta, profile.n);  // orbit step within Z_n
    if ((out.beta * profile.lambda) % profile.rho)
        throw std::logic_error("automorphism_params: gamma is not integral");
    out.gamma = out.beta * profile.lambda / profile.rho;
    out.check_shift = (f.eval(out.beta * profile.lambda) / profile.rho) % profile.r;
    return out;
}

namespace {

/// Breadth-first scratch reused across searches.
struct BfsScratch {
    std::vector<std::int32_t> dist;  // over n + r nodes, -1 = unvisited
    std::vector<std::int32_t> queue;
};

// Shortest path from the check end of edge e0 back to var v0, never crossing
// e0 itself; plus one gives the length of the shortest cycle using e0.
int cycle_through_edge(const TannerGraph& g, std::int64_t v0, std::int64_t e0,
                       int depth_cap, BfsScratch& s) {
    const auto& p = g.profile();
    const std::int64_t n = p.n;
    s.dist.assign(static_cast<std::size_t>(n + p.r), -1);
    s.queue.clear();

    const std::int64_t c0 = g.check_of_edge(e0);
    s.dist[static_cast<std::size_t>(n + c0)] = 0;
    s.queue.push_back(static_cast<std::int32_t>(n + c0));

    for (std::size_t head = 0; head < s.queue.size(); ++head) {
        const std::int64_t node = s.queue[head];
        const std::int32_t d = s.dist[static_cast<std::size_t>(node)];
        if (d + 1 >= depth_cap) break;
        if (node < n) {
            for (std::int64_t a = 0; a < p.lambda; ++a) {
                const std::int64_t e = node * p.lambda + a;
                if (e == e0) continue;
                const std::int64_t next = n + g.check_of_edge(e);
                if (s.dist[static_cast<std::size_t>(next)] < 0) {
                    s.dist[static_cast<std::size_t>(next)] = d + 1;
                    s.queue.push_back(static_cast<std::int32_t>(next));
                }
            }
        } else {
            const std::int64_t c = node - n;
            for (std::int64_t b = 0; b < p.rho; ++b) {
                const std::int64_t e = g.check_edge(c, b);
                if (e == e0) continue;
                const std::int64_t v = g.var_of_edge(e);
                if (v == v0) return d + 2;  // path to v0 closes the cycle via e0
                if (s.dist[static_cast<std::size_t>(v)] < 0) {
                    s.dist[static_cast<std::size_t>(v)] = d + 1;
                    s.queue.push_back(static_cast<std::int32_t>(v));
                }
            }
        }
    }
    return kGirthInfinite;
}

int local_girth_impl(const TannerGraph& g, std::int64_t v0, int depth_cap, BfsScratch& s) {
    int best = kGirthInfinite;
    for (std::int64_t a = 0; a < g.profile().lambda; ++a) {
        const int cap = best == kGirthInfinite ? depth_cap : std::min(depth_cap, best - 1);
        const int len = cycle_through_edge(g, v0, v0 * g.profile().lambda + a, cap, s);
        best = std::min(best, len);
        if (best == 2) break;
    }
    return best;
}

GirthResult girth_over_nodes(const TannerGraph& g, std::int64_t node_count,
                             std::int64_t class_size, const GirthOptions& opts) {
    const int threads = std::max(1, opts.threads);
    std::vector<std::vector<int>> locals(static_cast<std::size_t>(threads));
    auto work = [&](int tid) {
        BfsScratch scratch;
        auto& mine = locals[static_cast<std::size_t>(tid)];
        mine.assign(static_cast<std::size_t>(node_count), kGirthInfinite);
        for (std::int64_t v = tid; v < node_count; v += threads)
            mine[static_cast<std::size_t>(v)] = local_girth_impl(g, v, opts.depth_cap, scratch);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int tid = 0; tid < threads; ++tid) pool.emplace_back(work, tid);
        for (auto& th : pool) th.join();
    }

    GirthResult res;
    for (int tid = 0; tid < threads; ++tid) {
        for (std::int64_t v = tid; v < node_count; v += threads) {
            const int lg = locals[static_cast<std::size_t>(tid)][static_cast<std::size_t>(v)];
            if (lg < res.girth) {
                res.girth = lg;
                res.attaining_nodes = class_size;
            } else if (lg == res.girth && lg != kGirthInfinite) {
                res.attaining_nodes += class_size;
            }
        }
    }
    if (res.girth == kGirthInfinite) {
        res.truncated = true;  // either acyclic or all cycles longer than the cap
        res.attaining_nodes = 0;
    }
    return res;
}

}  // namespace

int local_girth(const TannerGraph& g, std::int64_t var_node, int depth_cap) {
    BfsScratch scratch;
    return local_girth_impl(g, var_node, depth_cap, scratch);
}

GirthResult girth(const TannerGraph& g, const AutomorphismParams& params, const GirthOptions& opts) {
    if (g.has_parallel_edges()) {
        GirthResult res;
        res.girth = 2;
        res.attaining_nodes = static_cast<std::int64_t>(g.parallel_edges().size());
        return res;
    }
    if (opts.exhaustive) return girth_over_nodes(g, g.profile().n, 1, opts);
    return girth_over_nodes(g, params.beta, g.profile().n / params.beta, opts);
}

GirthResult girth(const TannerGraph& g, const GirthOptions& opts) {
    GirthOptions ex = opts;
    ex.exhaustive = true;
    if (g.has_parallel_edges()) {
        GirthResult res;
        res.girth = 2;
        res.attaining_nodes = static_cast<std::int64_t>(g.parallel_edges().size());
        return res;
    }
    return girth_over_nodes(g, g.profile().n, 1, ex);
}

std::int64_t canonical_f1_range(std::int64_t f2, std::int64_t lambda, std::int64_t rho) {
    if (f2 < 1) throw std::invalid_argument("canonical_f1_range: f2 must be >= 1");
    return 2 * f2 * std::lcm(lambda, rho);
}

IsomorphicImages isomorphic_images(const Qpp& f, const CodeProfile& profile, std::int64_t m) {
    const std::int64_t N = f.modulus();
    const std::int64_t alpha = std::lcm(profile.lambda, profile.rho);
    IsomorphicImages img;
    img.offset = ((m % N) * (profile.rho % N)) % N;
    if (img.offset < 0) img.offset += N;
    img.f1_affine = f.f1();
    img.f2_affine = f.f2();
    std::int64_t shift = (2 * m) % N * (alpha % N) % N * (f.f2() % N) % N;
    img.f1_shifted = ((f.f1() + shift) % N + N) % N;
    img.f2_shifted = f.f2();
    return img;
}

}  // namespace qppldpc
