#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stcurves/stgroup.hpp"

namespace stcurves::moments {

// ---------------------------------------------------------------------------
// CycSum: an element of Z[zeta_N], N a power of two, stored on the basis
// 1, zeta, ..., zeta^{N/2 - 1} (zeta^{N/2} = -1 folds the upper half).  These
// are the Laurent-polynomial coefficients of the exact moment engine; sums of
// monomials never appear anywhere else.
// ---------------------------------------------------------------------------
class CycSum {
public:
    CycSum() = default;
    explicit CycSum(long long root_order);

    long long root_order() const { return n_; }
    bool is_zero() const;
    // Rational means every coordinate above the constant vanishes.
    bool is_rational() const;
    __int128 rational_part() const { return c_.empty() ? 0 : c_[0]; }

    void add_mono(const cyclo::CycMono& m, __int128 scale = 1);
    CycSum& operator+=(const CycSum& other);
    friend CycSum operator*(const CycSum& a, const CycSum& b);

    bool operator==(const CycSum& other) const;
    std::string str() const;

private:
    long long n_ = 2;
    std::vector<__int128> c_;  // length N/2

    void add_at(long long idx, __int128 v);
};

// ---------------------------------------------------------------------------
// TraceLaurent: tr(T(theta) * coset) as a Laurent polynomial in the torus
// variables u_0..u_{r-1}, exponent vectors keyed sparsely, coefficients exact
// cyclotomic sums.
// ---------------------------------------------------------------------------
struct TraceLaurent {
    int num_angles = 0;
    long long root_order = 2;
    std::map<std::vector<int8_t>, CycSum> terms;

    bool is_zero() const { return terms.empty(); }
};

// Only the diagonal blocks of the coset contribute:
// P = sum_i [ coset_{ii,(1,1)} u_{a_i} + coset_{ii,(2,2)} u_{a_i}^{-1} ].
TraceLaurent trace_laurent(const cyclo::MonoMatrix& coset,
                           const stgroup::TorusDescriptor& desc,
                           long long root_order);

// Constant term of P^n: the expectation of tr^n against the torus Haar
// measure (E[u^k] = delta_{k,0}).
CycSum exact_moment(const TraceLaurent& p, int n);
// Constant terms of P, P^2, ..., P^nmax in one sparse multiplication chain.
std::vector<CycSum> exact_moments_up_to(const TraceLaurent& p, int nmax);

struct McResult {
    size_t samples = 0;
    uint64_t seed = 0;
    std::vector<double> estimates;  // index n-1 holds M_n
    std::vector<double> stderrs;
};

struct MomentReport {
    curves::CurveSpec spec;
    int statistic = 1;  // the i of a_i / mu_i
    long long twist_class = 1;
    size_t cosets = 0;
    std::vector<int> orders;
    std::vector<Rat> exact;  // empty when only MC was requested (i >= 2)
    McResult mc;
};

// Exact M_n[mu_1] for n = 1..n_max: the average over component-group cosets
// of the constant term of the trace polynomial's n-th power.  Throws if the
// group average fails to be rational (invariant violation) or n_max > 12.
MomentReport group_exact_moments(const curves::CurveSpec& spec, int n_max);

enum class U1Variant { U1, U1_2 };
// M_n of the trace against Haar measure on U(1) resp. U(1)_2:
// binom(n, n/2) and 2^n binom(n, n/2); zero for odd n.
long long reference_u1_moments(int n, U1Variant variant);

// Coefficients a_1..a_g of the characteristic polynomial of a unitary 2g x 2g
// matrix (row-major), sign-fixed so a_1 is the eigenvalue sum; input must be
// unitary and the coefficients real to 1e-9 or the call throws.
std::vector<double> charpoly_coeffs(const std::vector<std::complex<double>>& m,
                                    int size);

// Monte Carlo moments of a_i: theta uniform on [0,2pi)^r and a uniform coset,
// per-sample counter-based RNG streams derived from (seed, index), fixed-size
// block accumulation; results are bit-identical for any thread count.
McResult mc_moments(const curves::CurveSpec& spec, int statistic, int n_max,
                    size_t samples, uint64_t seed, int threads);

// Full report: exact engine for a_1 plus optional MC for any statistic.
MomentReport st_moments(const curves::CurveSpec& spec, int statistic, int n_max,
                        size_t samples, uint64_t seed, int threads);

std::string report_to_json(const MomentReport& rep);
std::string report_to_csv(const MomentReport& rep);
std::string report_to_table(const MomentReport& rep);

}  // namespace stcurves::moments
