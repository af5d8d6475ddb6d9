#pragma once

#include <cstdint>
#include <vector>

namespace stcurves::arith {

struct PrimeList {
    uint64_t bound = 0;
    std::vector<uint64_t> primes;  // ascending, all primes <= bound
};

// Every prime <= bound, ascending.  bound = 1 gives the empty list.
PrimeList sieve_primes(uint64_t bound);

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p);
uint64_t powmod(uint64_t a, uint64_t e, uint64_t p);
// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(uint64_t n);

// Legendre symbol (a|p) in {-1, 0, +1} via Euler's criterion.
// p must be an odd prime.
int legendre(long long a, uint64_t p);

// Dense univariate integer polynomial, coefficients low-to-high.
struct Poly {
    std::vector<long long> coeffs;

    Poly() = default;
    explicit Poly(std::vector<long long> c);
    int degree() const { return int(coeffs.size()) - 1; }

    // x^n - c  and  x^n - c*x
    static Poly x_pow_minus_const(int n, long long c);
    static Poly x_pow_minus_cx(int n, long long c);
};

// #{(x, y) in F_p^2 : y^2 = f(x)} for odd p, counted with a square-indicator
// table of size p built once per prime: sum over x of 1 + chi(f(x)).
uint64_t affine_count(const Poly& f, uint64_t p);

}  // namespace stcurves::arith
