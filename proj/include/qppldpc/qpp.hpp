#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qppldpc {

struct PrimePower {
    std::int64_t prime;
    int exponent;
    bool operator==(const PrimePower&) const = default;
};

/// Prime factorization with primes in strictly increasing order.
using Factorization = std::vector<PrimePower>;

/// Trial-division factorization. Throws std::invalid_argument for n < 2.
Factorization factorize(std::int64_t n);

/// Product of the distinct primes of n.
std::int64_t radical(std::int64_t n);

/// Necessary and sufficient test for f(x) = f1*x + f2*x^2 (mod N) to permute
/// Z_N. Two cases depending on the power of 2 in N:
///   - 2 ∤ N or 4 | N: gcd(f1,N)=1 and every prime of N divides f2
///   - N ≡ 2 (mod 4): f1+f2 odd, gcd(f1,N/2)=1, every odd prime of N divides f2
/// f2 ≡ 0 degenerates to a linear polynomial, accepted iff gcd(f1,N)=1.
bool is_permutation_poly(std::int64_t n, std::int64_t f1, std::int64_t f2);

/// Quadratic permutation polynomial f(x) = f1*x + f2*x^2 (mod N).
/// Coefficients are stored reduced mod N; construction validates the
/// permutation property and throws std::invalid_argument otherwise.
class Qpp {
public:
    Qpp(std::int64_t modulus, std::int64_t f1, std::int64_t f2);

    std::int64_t modulus() const { return n_; }
    std::int64_t f1() const { return f1_; }
    std::int64_t f2() const { return f2_; }

    /// True when f2 ≡ 0, i.e. the polynomial is linear.
    bool linear() const { return f2_ == 0; }

    /// f(x) mod N, overflow-safe for N up to 2^30.
    std::int64_t eval(std::int64_t x) const;

    /// Full inverse permutation g with g[f(x)] = x for all x in [0, N).
    std::vector<std::int64_t> invert() const;

    bool operator==(const Qpp&) const = default;

private:
    std::int64_t n_, f1_, f2_;
};

/// Smallest admissible f2 for modulus n: the product of the distinct primes
/// of n, except that for n ≡ 2 (mod 4) the factor 2 is dropped (f2 needs
/// only the odd primes in that case).
std::int64_t min_f2(std::int64_t n);

}  // namespace qppldpc
