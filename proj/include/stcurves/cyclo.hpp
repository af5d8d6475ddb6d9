#pragma once

#include <complex>
#include <string>
#include <vector>

#include "stcurves/rational.hpp"

namespace stcurves::cyclo {

// ---------------------------------------------------------------------------
// CycMono: an exact monomial  zeta^e * c^q  where zeta = e^{2 pi i / N} for a
// power-of-two N and c is a formal positive real.  The root of unity is kept
// as a reduced rotation rot = e/N in [0, 1), so zeta_8^2 and zeta_4^1 compare
// equal structurally.  -1 is rot = 1/2; there is no separate sign.
// ---------------------------------------------------------------------------
struct CycMono {
    bool zero = true;
    Rat rot;  // exponent of e^{2 pi i}, in [0,1), power-of-two denominator
    Rat q;    // formal exponent of c

    static CycMono zero_mono() { return CycMono{}; }
    static CycMono one() { return CycMono{false, Rat(0), Rat(0)}; }
    static CycMono minus_one() { return CycMono{false, Rat(1, 2), Rat(0)}; }
    // zeta_n^e * c^q
    static CycMono zeta(long long e, long long n, Rat cexp = Rat(0)) {
        return CycMono{false, Rat(e, n).mod1(), cexp};
    }
    static CycMono c_power(Rat cexp) { return CycMono{false, Rat(0), cexp}; }

    bool is_one() const { return !zero && rot.is_zero() && q.is_zero(); }
    // True when the monomial is a pure root of unity (no formal c part).
    bool unit() const { return zero || q.is_zero(); }
};

CycMono mono_mul(const CycMono& a, const CycMono& b);
CycMono mono_conj(const CycMono& a);
CycMono mono_neg(const CycMono& a);
CycMono mono_inv(const CycMono& a);
CycMono mono_pow(const CycMono& a, long long k);
bool mono_equal(const CycMono& a, const CycMono& b);
// Substitutes zeta = e^{2 pi i rot} and the positive real root c^q.
// c_value <= 0 is rejected: the branch of c^q is only defined for c > 0.
std::complex<double> mono_eval(const CycMono& a, double c_value);
std::string mono_str(const CycMono& a);

// ---------------------------------------------------------------------------
// GaloisElt: sigma_a (zeta -> zeta^a, fixes c^q) or tau^k, the generator of
// the Galois action on the root of c.  tau(c^{1/2g}) = zeta_N^2 c^{1/2g}
// extends multiplicatively to c^q -> zeta_N^{N q} c^q, i.e. a rotation shift
// by q itself; the matrix action grades this by embedding slot (see
// galois_act).
// ---------------------------------------------------------------------------
struct GaloisElt {
    enum class Kind { Sigma, Tau };
    Kind kind;
    long long a = 1;     // sigma exponent, odd
    long long tau_pow = 1;

    static GaloisElt sigma(long long a) {
        if ((a & 1) == 0) throw std::invalid_argument("sigma_a needs odd a");
        return GaloisElt{Kind::Sigma, a, 0};
    }
    static GaloisElt tau(long long k = 1) { return GaloisElt{Kind::Tau, 1, k}; }
};

// ---------------------------------------------------------------------------
// MonoMatrix: a 2g x 2g matrix of CycMono entries, viewed as a g x g grid of
// 2 x 2 blocks.  Everything the construction produces (endomorphisms alpha,
// beta and the generators gamma, gamma_J, gamma_c and their products) is a
// generalized permutation matrix: at most one nonzero entry per row and
// column, so products never form sums and inverses are entry transposes.
// ---------------------------------------------------------------------------
class MonoMatrix {
public:
    MonoMatrix() = default;
    explicit MonoMatrix(int n) : n_(n), a_(size_t(n) * n) {}
    static MonoMatrix identity(int n);

    int size() const { return n_; }
    int blocks() const { return n_ / 2; }
    const CycMono& at(int r, int c) const { return a_[size_t(r) * n_ + c]; }
    void set(int r, int c, const CycMono& m) { a_[size_t(r) * n_ + c] = m; }
    // Adds into an entry; throws if the sum leaves the monomial world
    // (equal monomials cancel to zero, anything else is an error).
    void accumulate(int r, int c, const CycMono& m);

    // 2x2 block helpers, block indices 0-based.
    void set_block_scalar(int bi, int bj, const CycMono& m);            // m*I2
    void set_block_pair(int bi, int bj, const CycMono& m);              // diag(m, conj m)
    void set_block_diag(int bi, int bj, const CycMono& m1, const CycMono& m2);
    void set_block_j(int bi, int bj, bool negate);                      // +-J

    bool is_zero_block(int bi, int bj) const;
    bool is_identity() const;
    // Same matrix with every c-exponent erased (the unitarized frame).
    MonoMatrix with_c_cleared() const;

private:
    int n_ = 0;
    std::vector<CycMono> a_;
};

MonoMatrix mat_mul(const MonoMatrix& a, const MonoMatrix& b);
MonoMatrix mat_inv(const MonoMatrix& a);  // throws on singular pattern
MonoMatrix mat_conj_transpose(const MonoMatrix& a);
bool mat_equal(const MonoMatrix& a, const MonoMatrix& b);
MonoMatrix mat_neg(const MonoMatrix& a);

// The endomorphisms of Jac(y^2 = x^{2^d+1} - c x), genus g = 2^{d-1}:
//   alpha_d = diag(Z, Z^3, ..., Z^{2g-1}),  Z = diag(zeta, conj zeta),
//             zeta = zeta_{2^{d+1}}
//   beta_d  = block j -> (g-1-j) carrying (-1)^j c^{delta_j} I2,
//             delta_j = (2j - g + 1) / 2g
MonoMatrix alpha_matrix(int d);
MonoMatrix beta_matrix(int d);

// The endomorphisms of Jac(y^2 = x^{2^m} - c): block-diagonal over the
// factors d = 1..m-1.  alpha concatenates the alpha_d (the d-block phases
// zeta_{2^m}^{d_j+1} equal zeta_{2^{d+1}}^{2j+1}).  beta's (d; j, g_d-1-j)
// block is c^{delta_j} diag(i, -i): the pullback of the big-curve involution
// carries the factor i and no alternating sign.
MonoMatrix big_alpha(int m);
MonoMatrix big_beta(int m);

// Entrywise Galois action, graded by embedding slot: within each 2x2 block
// the second coordinate carries the conjugate embedding, so tau's phase on a
// c^q entry is zeta_N^{+N q} on even rows and zeta_N^{-N q} on odd rows
// (rotation +-q).  sigma_a multiplies every rotation by a and fixes c^q.
MonoMatrix galois_act(const GaloisElt& s, const MonoMatrix& m);

// Twisted Lefschetz relation: gamma M gamma^{-1} = ^sigma M for M in
// {alpha, beta}, compared as exact monomial identities after erasing
// c-exponents from both sides.  The relation only holds in the unitarized
// frame (the frame the USp generators live in); tau's content survives the
// erasure because its phase lands in the root-of-unity part.
bool verify_twisted_lefschetz(const MonoMatrix& gamma, const GaloisElt& s,
                              const MonoMatrix& alpha, const MonoMatrix& beta);

// Matrix dump format for golden-file tests:
// {"size": n, "entries": [[row, col, e, N, q_num, q_den], ...]}
std::string mat_to_json(const MonoMatrix& m);
MonoMatrix mat_from_json(const std::string& text);

}  // namespace stcurves::cyclo
