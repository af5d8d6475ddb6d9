#include "stcurves/stgroup.hpp"

#include <deque>
#include <stdexcept>

namespace stcurves::stgroup {

using cyclo::CycMono;
using cyclo::MonoMatrix;
using curves::CurveSpec;
using curves::Family;

namespace {

// Palindromic per-factor angle pattern: block j pairs with block g-1-j.
void append_factor_descriptor(TorusDescriptor& desc, int d) {
    int g = 1 << (d - 1);
    int r = d == 1 ? 1 : 1 << (d - 2);
    int base = desc.num_angles;
    for (int j = 0; j < g; ++j)
        desc.angle_of_block.push_back(base + std::min(j, g - 1 - j));
    desc.num_angles += r;
    desc.g += g;
}

}  // namespace

TorusDescriptor identity_descriptor(const CurveSpec& spec) {
    TorusDescriptor desc;
    if (spec.family == Family::TwoPowPlusOne) {
        append_factor_descriptor(desc, spec.param);
    } else {
        for (int d : curves::decompose_factors(spec.param))
            append_factor_descriptor(desc, d);
    }
    return desc;
}

long long classify_c(long long c, long long n) {
    if (c == 0) throw std::invalid_argument("classify_c: c must be nonzero");
    if (n < 8 || (n & (n - 1)) != 0)
        throw std::invalid_argument("classify_c: N must be a power of two >= 8");

    unsigned long long v = c < 0 ? (unsigned long long)(-c) : (unsigned long long)c;
    long long v2 = 0;
    while ((v & 1ULL) == 0) { v >>= 1; ++v2; }

    std::vector<long long> odd_vals;
    for (unsigned long long p = 3; p * p <= v && p <= 1000000ULL; p += 2) {
        if (v % p) continue;
        long long e = 0;
        while (v % p == 0) { v /= p; ++e; }
        odd_vals.push_back(e);
    }
    if (v > 1) {
        if (v > 1000000000000ULL && !arith::is_prime(v))
            throw std::invalid_argument("classify_c: c too large to factor");
        odd_vals.push_back(1);
    }

    for (long long a = n / 2; a >= 2; a /= 2) {
        bool ok = v2 % (a / 2) == 0;
        for (long long e : odd_vals) ok = ok && e % a == 0;
        if (ok) return a;
    }
    return 1;
}

namespace {

// gamma per the block rule: row i holds I at column (s+1)/2 when
// s = <5(2i-1)> mod 2^{d+1} stays <= 2g-1, otherwise J or -J at column
// (2^{d+1}-s+1)/2 with the sign split at g/2.
MonoMatrix gamma_for_factor(int d) {
    int g = 1 << (d - 1);
    long long order = 1LL << (d + 1);
    MonoMatrix m(2 * g);
    for (int i = 1; i <= g; ++i) {
        long long s = (5LL * (2 * i - 1)) % order;
        if (s <= 2 * g - 1) {
            int j = int((s + 1) / 2);
            m.set_block_scalar(i - 1, j - 1, CycMono::one());
        } else {
            int j = int((order - s + 1) / 2);
            m.set_block_j(i - 1, j - 1, /*negate=*/j > g / 2);
        }
    }
    return m;
}

// gamma_c for one factor: block j carries the conjugate pair
// diag(zeta^{a e_j}, zeta^{-a e_j}), e_j = 2j+1-g, zeta = zeta_{2^{d+1}}.
void fill_gamma_c_factor(MonoMatrix& m, int base, int d, long long a) {
    int g = 1 << (d - 1);
    long long order = 1LL << (d + 1);
    for (int j = 0; j < g; ++j) {
        long long e = a * (2LL * j + 1 - g);
        m.set_block_pair(base + j, base + j, CycMono::zeta(e, order));
    }
}

}  // namespace

cyclo::MonoMatrix symplectic_form(int g) {
    MonoMatrix m(2 * g);
    for (int b = 0; b < g; ++b) m.set_block_j(b, b, false);
    return m;
}

GeneratorSet generators(const CurveSpec& spec) {
    GeneratorSet out;
    if (spec.family == Family::TwoPowPlusOne) {
        int d = spec.param;
        int g = 1 << (d - 1);
        out.twist_class = d == 1 ? 1 : classify_c(spec.c, 1LL << (d + 1));
        out.gamma = gamma_for_factor(d);
        out.gamma_j = symplectic_form(g);
        MonoMatrix gc(2 * g);
        fill_gamma_c_factor(gc, 0, d, out.twist_class);
        out.gamma_c = gc;
    } else {
        int m = spec.param;
        int g = (1 << (m - 1)) - 1;
        out.twist_class = m == 2 ? 1 : classify_c(spec.c, 1LL << m);
        MonoMatrix gamma(2 * g), gc(2 * g);
        int base = 0;
        for (int d : curves::decompose_factors(m)) {
            int gd = 1 << (d - 1);
            MonoMatrix part = gamma_for_factor(d);
            for (int r = 0; r < 2 * gd; ++r)
                for (int c = 0; c < 2 * gd; ++c)
                    if (!part.at(r, c).zero)
                        gamma.set(2 * base + r, 2 * base + c, part.at(r, c));
            fill_gamma_c_factor(gc, base, d, out.twist_class);
            base += gd;
        }
        out.gamma = gamma;
        out.gamma_j = symplectic_form(g);
        out.gamma_c = gc;
    }
    return out;
}

bool check_usp_membership(const MonoMatrix& m) {
    if (m.size() % 2) return false;
    MonoMatrix mh = cyclo::mat_conj_transpose(m);
    if (!cyclo::mat_mul(mh, m).is_identity()) return false;
    MonoMatrix omega = symplectic_form(m.size() / 2);
    MonoMatrix mt(m.size());
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j)
            if (!m.at(i, j).zero) mt.set(j, i, m.at(i, j));
    return cyclo::mat_equal(cyclo::mat_mul(cyclo::mat_mul(mt, omega), m), omega);
}

bool is_torus_point(const MonoMatrix& m, const TorusDescriptor& desc) {
    if (m.size() != 2 * desc.g) return false;
    std::vector<CycMono> angle_val(size_t(desc.num_angles), CycMono::zero_mono());
    for (int b = 0; b < desc.g; ++b) {
        for (int ob = 0; ob < desc.g; ++ob)
            if (ob != b && !m.is_zero_block(b, ob)) return false;
        const CycMono& u = m.at(2 * b, 2 * b);
        const CycMono& v = m.at(2 * b + 1, 2 * b + 1);
        if (u.zero || v.zero) return false;
        if (!m.at(2 * b, 2 * b + 1).zero || !m.at(2 * b + 1, 2 * b).zero) return false;
        if (!u.unit() || !v.unit()) return false;
        if (!cyclo::mono_equal(v, cyclo::mono_conj(u))) return false;
        CycMono& seen = angle_val[size_t(desc.angle_of_block[size_t(b)])];
        if (seen.zero)
            seen = u;
        else if (!cyclo::mono_equal(seen, u))
            return false;
    }
    return true;
}

bool coset_equal(const MonoMatrix& g1, const MonoMatrix& g2,
                 const TorusDescriptor& desc) {
    return is_torus_point(cyclo::mat_mul(g1, cyclo::mat_inv(g2)), desc);
}

bool normalizes_torus(const MonoMatrix& gen, const TorusDescriptor& desc) {
    MonoMatrix gi = cyclo::mat_inv(gen);
    // One probe per angle: u_a = zeta_16, the rest 1.  Conjugation must land
    // back in the torus (with angles permuted and possibly negated).
    for (int a = 0; a < desc.num_angles; ++a) {
        MonoMatrix t(2 * desc.g);
        for (int b = 0; b < desc.g; ++b) {
            CycMono u = desc.angle_of_block[size_t(b)] == a ? CycMono::zeta(1, 16)
                                                            : CycMono::one();
            t.set_block_pair(b, b, u);
        }
        if (!is_torus_point(cyclo::mat_mul(cyclo::mat_mul(gen, t), gi), desc))
            return false;
    }
    return true;
}

CosetList component_group(const GeneratorSet& gens, const TorusDescriptor& desc,
                          size_t cap) {
    CosetList out;
    out.representatives.push_back(MonoMatrix::identity(2 * desc.g));
    std::deque<size_t> queue{0};
    const MonoMatrix* mults[3] = {&gens.gamma, &gens.gamma_j, &gens.gamma_c};
    while (!queue.empty()) {
        size_t i = queue.front();
        queue.pop_front();
        for (const MonoMatrix* m : mults) {
            MonoMatrix prod = cyclo::mat_mul(*m, out.representatives[i]);
            bool known = false;
            for (const MonoMatrix& rep : out.representatives)
                if (coset_equal(prod, rep, desc)) { known = true; break; }
            if (!known) {
                out.representatives.push_back(std::move(prod));
                queue.push_back(out.representatives.size() - 1);
                if (out.representatives.size() > cap)
                    throw std::logic_error(
                        "component_group: closure exceeded the field degree bound");
            }
        }
    }
    return out;
}

CosetList component_group(const CurveSpec& spec) {
    TorusDescriptor desc = identity_descriptor(spec);
    GeneratorSet gens = generators(spec);
    size_t cap = spec.family == Family::TwoPowPlusOne
                     ? (size_t(1) << (2 * spec.param))
                     : (size_t(1) << (2 * spec.param - 2));
    return component_group(gens, desc, cap);
}

}  // namespace stcurves::stgroup
