#include "qppldpc/qpp.hpp"

#include <numeric>

namespace qppldpc {

Factorization factorize(std::int64_t n) {
    if (n < 2) throw std::invalid_argument("factorize: n must be >= 2");
    Factorization out;
    for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

std::int64_t radical(std::int64_t n) {
    std::int64_t rad = 1;
    for (const auto& [p, e] : factorize(n)) rad *= p;
    return rad;
}

bool is_permutation_poly(std::int64_t n, std::int64_t f1, std::int64_t f2) {
    if (n < 2) throw std::invalid_argument("is_permutation_poly: N must be >= 2");
    f1 = ((f1 % n) + n) % n;
    f2 = ((f2 % n) + n) % n;
    if (f2 == 0) return std::gcd(f1, n) == 1;  // linear case

    const bool n_mod4_is_2 = (n % 4) == 2;
    if (!n_mod4_is_2) {
        if (std::gcd(f1, n) != 1) return false;
        for (const auto& [p, e] : factorize(n))
            if (f2 % p) return false;
        return true;
    }
    // N ≡ 2 (mod 4)
    if ((f1 + f2) % 2 == 0) return false;
    if (std::gcd(f1, n / 2) != 1) return false;
    for (const auto& [p, e] : factorize(n))
        if (p != 2 && f2 % p) return false;
    return true;
}

Qpp::Qpp(std::int64_t modulus, std::int64_t f1, std::int64_t f2)
    : n_(modulus), f1_(((f1 % modulus) + modulus) % modulus),
      f2_(((f2 % modulus) + modulus) % modulus) {
    if (modulus < 2) throw std::invalid_argument("Qpp: modulus must be >= 2");
    if (!is_permutation_poly(n_, f1_, f2_))
        throw std::invalid_argument("Qpp: coefficients do not define a permutation of Z_N");
}

std::int64_t Qpp::eval(std::int64_t x) const {
    x = ((x % n_) + n_) % n_;
    // x^2 mod N first keeps every intermediate below 2^60 for N <= 2^30.
    const std::int64_t x2 = (x * x) % n_;
    return (f1_ * x % n_ + f2_ * x2 % n_) % n_;
}

std::vector<std::int64_t> Qpp::invert() const {
    std::vector<std::int64_t> g(static_cast<std::size_t>(n_));
    for (std::int64_t x = 0; x < n_; ++x) g[static_cast<std::size_t>(eval(x))] = x;
    return g;
}

std::int64_t min_f2(std::int64_t n) {
    std::int64_t rad = radical(n);
    if (n % 4 == 2) rad /= 2;
    return rad;
}

}  // namespace qppldpc
