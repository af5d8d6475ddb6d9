#include <doctest.h>

#include <random>

#include "stcurves/arith.hpp"

using namespace stcurves::arith;

namespace {

// Independent oracle: count solutions of y^2 = f(x) by looping over all
// (x, y) pairs.
uint64_t brute_affine_count(const Poly& f, uint64_t p) {
    uint64_t count = 0;
    for (uint64_t x = 0; x < p; ++x) {
        uint64_t v = 0;
        for (size_t e = f.coeffs.size(); e-- > 0;) {
            long long c = f.coeffs[e] % (long long)p;
            if (c < 0) c += (long long)p;
            v = (mulmod(v, x, p) + uint64_t(c)) % p;
        }
        for (uint64_t y = 0; y < p; ++y)
            if (mulmod(y, y, p) == v) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("sieve_primes") {
    CHECK(sieve_primes(10).primes == std::vector<uint64_t>{2, 3, 5, 7});
    CHECK(sieve_primes(2).primes == std::vector<uint64_t>{2});
    CHECK(sieve_primes(1).primes.empty());
    PrimeList pl = sieve_primes(1000);
    CHECK(pl.primes.size() == 168);
    for (uint64_t p : pl.primes) CHECK(is_prime(p));
}

TEST_CASE("legendre") {
    CHECK(legendre(2, 7) == 1);   // 3^2 = 2 mod 7
    CHECK(legendre(3, 7) == -1);  // squares mod 7 are {1, 2, 4}
    CHECK(legendre(7, 7) == 0);
    CHECK_THROWS_AS(legendre(3, 8), std::invalid_argument);
    CHECK_THROWS_AS(legendre(3, 2), std::invalid_argument);

    // full multiplicativity over a few primes
    for (uint64_t p : {11ULL, 13ULL, 101ULL}) {
        for (long long a = 1; a < 20; ++a)
            for (long long b = 1; b < 20; ++b) {
                if (a % (long long)p == 0 || b % (long long)p == 0) continue;
                CHECK(legendre(a * b, p) == legendre(a, p) * legendre(b, p));
            }
    }
}

TEST_CASE("affine_count on pinned examples") {
    Poly cubic({0, -1, 0, 1});  // x^3 - x
    CHECK(brute_affine_count(cubic, 5) == 7);
    CHECK(affine_count(cubic, 5) == 7);
    CHECK(brute_affine_count(cubic, 7) == 7);
    CHECK(affine_count(cubic, 7) == 7);
    Poly lin({0, 1});  // x
    CHECK(brute_affine_count(lin, 3) == 3);
    CHECK(affine_count(lin, 3) == 3);
    CHECK_THROWS_AS(affine_count(cubic, 2), std::invalid_argument);
}

TEST_CASE("affine_count equals the character sum and the brute force") {
    std::mt19937_64 rng(42);
    for (uint64_t p : sieve_primes(100).primes) {
        if (p == 2) continue;
        for (int trial = 0; trial < 4; ++trial) {
            int deg = 1 + int(rng() % 9);
            std::vector<long long> coeffs(size_t(deg) + 1);
            for (auto& c : coeffs) c = (long long)(rng() % 19) - 9;
            if (coeffs.back() == 0) coeffs.back() = 1;
            Poly f(coeffs);

            uint64_t fast = affine_count(f, p);
            CHECK(fast == brute_affine_count(f, p));

            // second independent path: sum over x of 1 + legendre(f(x), p)
            long long chi_sum = 0;
            for (uint64_t x = 0; x < p; ++x) {
                long long v = 0;
                for (size_t e = f.coeffs.size(); e-- > 0;)
                    v = (v * (long long)x + f.coeffs[e]) % (long long)p;
                chi_sum += 1 + legendre(v, p);
            }
            CHECK((long long)fast == chi_sum);

            // crude character-sum bound
            uint64_t root = 0;
            while ((root + 1) * (root + 1) <= p) ++root;
            long long slack = (long long)f.degree() * (long long)(2 * root) +
                              f.degree();
            CHECK(std::llabs((long long)fast - (long long)p) <= slack);
        }
    }
}
