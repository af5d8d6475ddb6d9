#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stcurves/arith.hpp"

namespace stcurves::curves {

enum class Family { PowTwo, TwoPowPlusOne };

// One curve from either family:
//   PowTwo        m >= 2: y^2 = x^{2^m} - c       (genus 2^{m-1} - 1)
//   TwoPowPlusOne d >= 1: y^2 = x^{2^d+1} - c x   (genus 2^{d-1})
struct CurveSpec {
    Family family;
    int param;    // m or d
    long long c;  // nonzero twist constant

    CurveSpec(Family f, int p, long long cc);
    static CurveSpec pow_two(int m, long long c) { return {Family::PowTwo, m, c}; }
    static CurveSpec two_pow_plus_one(int d, long long c) {
        return {Family::TwoPowPlusOne, d, c};
    }

    std::string family_name() const;  // "pow2m" / "twopow"
    std::string model() const;        // e.g. "y^2 = x^9 - 3x"
};

int genus(const CurveSpec& spec);
arith::Poly curve_poly(const CurveSpec& spec);

// Good reduction rule used throughout: p odd and p does not divide c.
bool is_good_prime(const CurveSpec& spec, uint64_t p);

// t = p + 1 - #C(F_p); the point at infinity counts once for the odd-degree
// family and twice for the even-degree one (leading coefficient 1 splits).
long long frobenius_trace(const CurveSpec& spec, uint64_t p);
double normalized_a1(const CurveSpec& spec, uint64_t p);

struct TraceRecord {
    uint64_t p;
    long long t;
    double a1;
};

// Jac(y^2 = x^{2^m} - c) ~ prod over d of Jac(y^2 = x^{2^d+1} - c x).
std::vector<int> decompose_factors(int m);

struct AdditivityReport {
    int m;
    long long c;
    uint64_t pmax;
    size_t primes_checked = 0;
    struct Violation {
        uint64_t p;
        long long lhs;  // trace of the big curve
        long long rhs;  // sum of the factor traces
    };
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Checks t(C_{2^m}, p) = sum_d t(C'_{2^d+1}, p) at every good p <= pmax,
// counting both sides independently.
AdditivityReport verify_trace_additivity(int m, long long c, uint64_t pmax);

// Prime sweep.  Partitioned across threads, merged sorted by p; results are
// identical for any thread count.  When a cache path is given, cached rows
// are reused and newly computed ones are appended (the file is rewritten
// only if the new primes do not all extend past the cached ones).
std::vector<TraceRecord> sweep_traces(const CurveSpec& spec, uint64_t pmax,
                                      int threads,
                                      const std::string& cache_path = "");

// Trace cache CSV: header "family,param,c,p,t", rows sorted by p.
std::vector<TraceRecord> load_trace_cache(const std::string& path,
                                          const CurveSpec& spec);
void write_trace_cache(const std::string& path, const CurveSpec& spec,
                       const std::vector<TraceRecord>& records);

struct CurveMoments {
    CurveSpec spec;
    uint64_t pmax = 0;
    size_t primes = 0;
    std::vector<int> orders;
    std::vector<double> moments;  // mean of a1^n over good primes
};

// Numerical a1 moments over good primes <= pmax.  For the PowTwo family the
// trace is assembled as the sum of the factor traces (same decomposition the
// additivity check exercises), which keeps the sweep cost at the factor
// degrees.
CurveMoments curve_moments(const CurveSpec& spec, uint64_t pmax, int nmax,
                           int threads, const std::string& cache_dir = "");

}  // namespace stcurves::curves
