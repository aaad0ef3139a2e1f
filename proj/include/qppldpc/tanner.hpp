#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "qppldpc/gf2.hpp"
#include "qppldpc/qpp.hpp"

namespace qppldpc {

/// (lambda, rho)-regular code dimensions; N = n*lambda = r*rho edges.
struct CodeProfile {
    std::int64_t lambda = 0;  // variable node degree
    std::int64_t rho = 0;     // check node degree
    std::int64_t n = 0;       // variable nodes
    std::int64_t r = 0;       // check nodes
    std::int64_t edges = 0;   // N

    static CodeProfile make(std::int64_t lambda, std::int64_t rho, std::int64_t n);
    void validate() const;  // throws std::invalid_argument on inconsistency
    bool operator==(const CodeProfile&) const = default;
};

/// Bipartite multigraph where edge i joins variable floor(i/lambda) to check
/// floor(f(i)/rho).
class TannerGraph {
public:
    TannerGraph(const CodeProfile& profile, const Qpp& f);
    /// Same construction with an arbitrary permutation of the edge labels
    /// (used to build graphs from shifted/affine images of a polynomial).
    TannerGraph(const CodeProfile& profile, const std::function<std::int64_t(std::int64_t)>& perm);

    const CodeProfile& profile() const { return profile_; }
    std::int64_t check_of_edge(std::int64_t e) const { return edge_check_[static_cast<std::size_t>(e)]; }
    std::int64_t var_of_edge(std::int64_t e) const { return e / profile_.lambda; }

    /// Edge ids incident to a check node, grouped contiguously.
    const std::vector<std::uint32_t>& check_edges() const { return check_edges_; }
    std::int64_t check_edge(std::int64_t c, std::int64_t slot) const {
        return check_edges_[static_cast<std::size_t>(c * profile_.rho + slot)];
    }

    /// Pairs (variable, check) connected by more than one edge.
    const std::vector<std::pair<std::int64_t, std::int64_t>>& parallel_edges() const {
        return parallel_;
    }
    bool has_parallel_edges() const { return !parallel_.empty(); }

    /// Biadjacency matrix over GF(2); throws if the graph has parallel edges.
    SparseBitMatrix to_parity_check() const;

private:
    CodeProfile profile_;
    std::vector<std::uint32_t> edge_check_;   // check index per edge
    std::vector<std::uint32_t> check_edges_;  // edges grouped by check, rho each
    std::vector<std::pair<std::int64_t, std::int64_t>> parallel_;
};

/// Shift-automorphism parameters of the graph of a Qpp.
///
/// The smallest positive edge-label shift that maps the graph onto itself is
/// c = beta*lambda: shifts by c change right labels by the constant f(c),
/// so variables shift by beta and checks by check_shift = f(c)/rho (mod r).
/// gamma = beta*lambda/rho is the step of the check-node equivalence classes
/// (gcd(check_shift, r) == gamma).
struct AutomorphismParams {
    std::int64_t u = 0;            // gcd(2*f2, N)
    std::int64_t t = 0;            // lcm(N/u, lambda)/lambda
    std::int64_t beta = 0;         // variable-node class step, divides n
    std::int64_t gamma = 0;        // check-node class step, divides r
    std::int64_t check_shift = 0;  // check shift paired with variable shift beta
};

AutomorphismParams automorphism_params(const Qpp& f, const CodeProfile& profile);

constexpr int kGirthInfinite = std::numeric_limits<int>::max();

struct GirthOptions {
    bool exhaustive = false;  // scan every variable node instead of class reps
    int depth_cap = 16;       // longest cycle length searched for
    int threads = 1;
};

struct GirthResult {
    int girth = kGirthInfinite;     // 2 encodes parallel edges
    bool truncated = false;         // no cycle <= depth_cap found (girth > cap)
    std::int64_t attaining_nodes = 0;  // variable nodes whose local girth equals girth
};

/// Shortest cycle length through a variable node, or kGirthInfinite if none
/// within `depth_cap`.
int local_girth(const TannerGraph& g, std::int64_t var_node, int depth_cap = 16);

/// Graph girth. Pruned mode (default) scans one representative per
/// automorphism class v_0..v_{beta-1}; exhaustive mode scans all nodes.
GirthResult girth(const TannerGraph& g, const AutomorphismParams& params,
                  const GirthOptions& opts = {});
GirthResult girth(const TannerGraph& g, const GirthOptions& opts = {});  // always exhaustive

/// Exclusive upper bound 2*f2*lcm(lambda,rho) of the canonical f1 search range.
std::int64_t canonical_f1_range(std::int64_t f2, std::int64_t lambda, std::int64_t rho);

/// Images of f under the two graph-isomorphism families, parameterized by m.
/// The first adds a constant m*rho to the polynomial (offset, f1, f2); the
/// second shifts f1 by 2*m*alpha*f2 with alpha = lcm(lambda, rho).
struct IsomorphicImages {
    std::int64_t offset = 0;  // constant term of the affine image, mod N
    std::int64_t f1_affine = 0, f2_affine = 0;
    std::int64_t f1_shifted = 0, f2_shifted = 0;  // pure Qpp image
};

IsomorphicImages isomorphic_images(const Qpp& f, const CodeProfile& profile, std::int64_t m);

}  // namespace qppldpc
