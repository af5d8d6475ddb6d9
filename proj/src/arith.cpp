#include "stcurves/arith.hpp"

#include <stdexcept>

namespace stcurves::arith {

PrimeList sieve_primes(uint64_t bound) {
    if (bound < 1) throw std::invalid_argument("sieve_primes: bound >= 1");
    PrimeList out;
    out.bound = bound;
    if (bound < 2) return out;
    std::vector<bool> comp(bound + 1, false);
    for (uint64_t i = 2; i * i <= bound; ++i)
        if (!comp[i])
            for (uint64_t j = i * i; j <= bound; j += i) comp[j] = true;
    for (uint64_t i = 2; i <= bound; ++i)
        if (!comp[i]) out.primes.push_back(i);
    return out;
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return uint64_t((unsigned __int128)a * b % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                       29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // Sprp bases covering all n < 2^64.
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                       29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

int legendre(long long a, uint64_t p) {
    if (p == 2 || !is_prime(p))
        throw std::invalid_argument("legendre: p must be an odd prime");
    long long r = a % (long long)p;
    if (r < 0) r += (long long)p;
    if (r == 0) return 0;
    uint64_t e = powmod(uint64_t(r), (p - 1) / 2, p);
    return e == 1 ? +1 : -1;
}

Poly::Poly(std::vector<long long> c) : coeffs(std::move(c)) {
    if (coeffs.empty() || coeffs.back() == 0)
        throw std::invalid_argument("Poly: leading coefficient must be nonzero");
}

Poly Poly::x_pow_minus_const(int n, long long c) {
    std::vector<long long> v(size_t(n) + 1, 0);
    v[0] = -c;
    v[size_t(n)] = 1;
    return Poly(std::move(v));
}

Poly Poly::x_pow_minus_cx(int n, long long c) {
    std::vector<long long> v(size_t(n) + 1, 0);
    v[1] = -c;
    v[size_t(n)] = 1;
    return Poly(std::move(v));
}

namespace {

// f reduced mod p as (coefficient, exponent) pairs; sparse curve polynomials
// evaluate in O(#terms * log deg) per point.
struct SparseModPoly {
    std::vector<std::pair<uint64_t, uint64_t>> terms;  // (coeff, exponent)

    SparseModPoly(const Poly& f, uint64_t p) {
        for (size_t e = 0; e < f.coeffs.size(); ++e) {
            long long c = f.coeffs[e] % (long long)p;
            if (c < 0) c += (long long)p;
            if (c != 0) terms.push_back({uint64_t(c), uint64_t(e)});
        }
    }

    uint64_t eval(uint64_t x, uint64_t p) const {
        uint64_t acc = 0;
        for (const auto& [c, e] : terms) {
            uint64_t t = mulmod(c, powmod(x, e, p), p);
            acc += t;
            if (acc >= p) acc -= p;
        }
        return acc;
    }
};

}  // namespace

uint64_t affine_count(const Poly& f, uint64_t p) {
    if (p == 2)
        throw std::invalid_argument("affine_count: the model is singular in characteristic 2");
    if (!is_prime(p)) throw std::invalid_argument("affine_count: p must be prime");

    std::vector<uint8_t> is_square(p, 0);
    for (uint64_t y = 0; y <= (p - 1) / 2; ++y) is_square[mulmod(y, y, p)] = 1;

    SparseModPoly fm(f, p);
    uint64_t count = 0;
    for (uint64_t x = 0; x < p; ++x) {
        uint64_t v = fm.eval(x, p);
        if (v == 0)
            count += 1;
        else if (is_square[v])
            count += 2;
    }
    return count;
}

}  // namespace stcurves::arith
