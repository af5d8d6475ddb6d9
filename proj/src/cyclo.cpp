#include "stcurves/cyclo.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace stcurves::cyclo {

CycMono mono_mul(const CycMono& a, const CycMono& b) {
    if (a.zero || b.zero) return CycMono::zero_mono();
    return CycMono{false, (a.rot + b.rot).mod1(), a.q + b.q};
}

CycMono mono_conj(const CycMono& a) {
    if (a.zero) return a;
    return CycMono{false, (-a.rot).mod1(), a.q};
}

CycMono mono_neg(const CycMono& a) {
    if (a.zero) return a;
    return CycMono{false, (a.rot + Rat(1, 2)).mod1(), a.q};
}

CycMono mono_inv(const CycMono& a) {
    if (a.zero) throw std::domain_error("mono_inv: zero monomial");
    return CycMono{false, (-a.rot).mod1(), -a.q};
}

CycMono mono_pow(const CycMono& a, long long k) {
    if (a.zero) {
        if (k <= 0) throw std::domain_error("mono_pow: zero base");
        return a;
    }
    return CycMono{false, (a.rot * Rat(k)).mod1(), a.q * Rat(k)};
}

bool mono_equal(const CycMono& a, const CycMono& b) {
    if (a.zero != b.zero) return false;
    if (a.zero) return true;
    return a.rot == b.rot && a.q == b.q;
}

std::complex<double> mono_eval(const CycMono& a, double c_value) {
    if (c_value <= 0.0)
        throw std::domain_error(
            "mono_eval: c must be a positive real (the branch of c^q is "
            "undefined otherwise)");
    if (a.zero) return {0.0, 0.0};
    double ang = 2.0 * std::numbers::pi * a.rot.to_double();
    double mag = std::pow(c_value, a.q.to_double());
    return std::polar(mag, ang);
}

std::string mono_str(const CycMono& a) {
    if (a.zero) return "0";
    std::ostringstream os;
    if (a.rot.is_zero())
        os << "1";
    else if (a.rot == Rat(1, 2))
        os << "-1";
    else
        os << "z^(" << a.rot.str() << ")";
    if (!a.q.is_zero()) os << "*c^(" << a.q.str() << ")";
    return os.str();
}

// --- MonoMatrix ------------------------------------------------------------

MonoMatrix MonoMatrix::identity(int n) {
    MonoMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, CycMono::one());
    return m;
}

void MonoMatrix::accumulate(int r, int c, const CycMono& m) {
    if (m.zero) return;
    CycMono& e = a_[size_t(r) * n_ + c];
    if (e.zero) {
        e = m;
        return;
    }
    if (mono_equal(e, mono_neg(m))) {
        e = CycMono::zero_mono();
        return;
    }
    throw std::domain_error("MonoMatrix: entry sum is not a monomial");
}

void MonoMatrix::set_block_scalar(int bi, int bj, const CycMono& m) {
    set(2 * bi, 2 * bj, m);
    set(2 * bi + 1, 2 * bj + 1, m);
}

void MonoMatrix::set_block_pair(int bi, int bj, const CycMono& m) {
    set(2 * bi, 2 * bj, m);
    set(2 * bi + 1, 2 * bj + 1, mono_conj(m));
}

void MonoMatrix::set_block_diag(int bi, int bj, const CycMono& m1,
                                const CycMono& m2) {
    set(2 * bi, 2 * bj, m1);
    set(2 * bi + 1, 2 * bj + 1, m2);
}

void MonoMatrix::set_block_j(int bi, int bj, bool negate) {
    CycMono one = CycMono::one();
    CycMono mone = CycMono::minus_one();
    set(2 * bi, 2 * bj + 1, negate ? mone : one);
    set(2 * bi + 1, 2 * bj, negate ? one : mone);
}

bool MonoMatrix::is_zero_block(int bi, int bj) const {
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (!at(2 * bi + r, 2 * bj + c).zero) return false;
    return true;
}

bool MonoMatrix::is_identity() const {
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) {
            const CycMono& m = at(r, c);
            if (r == c ? !m.is_one() : !m.zero) return false;
        }
    return true;
}

MonoMatrix MonoMatrix::with_c_cleared() const {
    MonoMatrix m(*this);
    for (auto& e : m.a_)
        if (!e.zero) e.q = Rat(0);
    return m;
}

MonoMatrix mat_mul(const MonoMatrix& a, const MonoMatrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("mat_mul: size mismatch");
    int n = a.size();
    MonoMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const CycMono& x = a.at(i, j);
            if (x.zero) continue;
            for (int k = 0; k < n; ++k) {
                const CycMono& y = b.at(j, k);
                if (y.zero) continue;
                out.accumulate(i, k, mono_mul(x, y));
            }
        }
    return out;
}

MonoMatrix mat_inv(const MonoMatrix& a) {
    int n = a.size();
    std::vector<int> col_of_row(n, -1);
    std::vector<int> hits(n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (a.at(i, j).zero) continue;
            if (col_of_row[i] != -1)
                throw std::domain_error("mat_inv: singular (row with two entries)");
            col_of_row[i] = j;
            ++hits[j];
        }
        if (col_of_row[i] == -1)
            throw std::domain_error("mat_inv: singular (zero row)");
    }
    for (int j = 0; j < n; ++j)
        if (hits[j] != 1)
            throw std::domain_error("mat_inv: singular (column pattern)");
    MonoMatrix out(n);
    for (int i = 0; i < n; ++i)
        out.set(col_of_row[i], i, mono_inv(a.at(i, col_of_row[i])));
    return out;
}

MonoMatrix mat_conj_transpose(const MonoMatrix& a) {
    int n = a.size();
    MonoMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!a.at(i, j).zero) out.set(j, i, mono_conj(a.at(i, j)));
    return out;
}

bool mat_equal(const MonoMatrix& a, const MonoMatrix& b) {
    if (a.size() != b.size()) return false;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j)
            if (!mono_equal(a.at(i, j), b.at(i, j))) return false;
    return true;
}

MonoMatrix mat_neg(const MonoMatrix& a) {
    MonoMatrix out(a.size());
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j)
            if (!a.at(i, j).zero) out.set(i, j, mono_neg(a.at(i, j)));
    return out;
}

// --- endomorphism builders ---------------------------------------------------

MonoMatrix alpha_matrix(int d) {
    if (d < 1) throw std::invalid_argument("alpha_matrix: d >= 1");
    int g = 1 << (d - 1);
    long long order = 1LL << (d + 1);
    MonoMatrix m(2 * g);
    for (int j = 0; j < g; ++j)
        m.set_block_pair(j, j, CycMono::zeta(2 * j + 1, order));
    return m;
}

MonoMatrix beta_matrix(int d) {
    if (d < 1) throw std::invalid_argument("beta_matrix: d >= 1");
    int g = 1 << (d - 1);
    MonoMatrix m(2 * g);
    for (int j = 0; j < g; ++j) {
        Rat delta(2 * j - g + 1, 2LL * g);
        CycMono entry = CycMono::c_power(delta);
        if (j & 1) entry = mono_neg(entry);
        m.set_block_scalar(j, g - 1 - j, entry);
    }
    return m;
}

MonoMatrix big_alpha(int m) {
    if (m < 2) throw std::invalid_argument("big_alpha: m >= 2");
    int g = (1 << (m - 1)) - 1;
    long long order = 1LL << m;
    MonoMatrix out(2 * g);
    int base = 0;
    for (int d = 1; d <= m - 1; ++d) {
        int gd = 1 << (d - 1);
        for (int j = 0; j < gd; ++j) {
            // d_j + 1 = 2^{m-d-1} (2j+1); the same rotation as zeta_{2^{d+1}}^{2j+1}
            long long dj1 = (1LL << (m - d - 1)) * (2 * j + 1);
            out.set_block_pair(base + j, base + j, CycMono::zeta(dj1, order));
        }
        base += gd;
    }
    return out;
}

MonoMatrix big_beta(int m) {
    if (m < 2) throw std::invalid_argument("big_beta: m >= 2");
    int g = (1 << (m - 1)) - 1;
    MonoMatrix out(2 * g);
    CycMono i_unit = CycMono::zeta(1, 4);
    int base = 0;
    for (int d = 1; d <= m - 1; ++d) {
        int gd = 1 << (d - 1);
        for (int j = 0; j < gd; ++j) {
            Rat delta(2 * j - gd + 1, 2LL * gd);
            CycMono entry = mono_mul(i_unit, CycMono::c_power(delta));
            out.set_block_pair(base + j, base + (gd - 1 - j), entry);
        }
        base += gd;
    }
    return out;
}

MonoMatrix galois_act(const GaloisElt& s, const MonoMatrix& m) {
    MonoMatrix out(m.size());
    for (int r = 0; r < m.size(); ++r)
        for (int c = 0; c < m.size(); ++c) {
            CycMono e = m.at(r, c);
            if (e.zero) continue;
            if (s.kind == GaloisElt::Kind::Sigma) {
                e.rot = (e.rot * Rat(s.a)).mod1();
            } else {
                Rat shift = e.q * Rat(s.tau_pow);
                e.rot = (r & 1) ? (e.rot - shift).mod1() : (e.rot + shift).mod1();
            }
            out.set(r, c, e);
        }
    return out;
}

bool verify_twisted_lefschetz(const MonoMatrix& gamma, const GaloisElt& s,
                              const MonoMatrix& alpha, const MonoMatrix& beta) {
    MonoMatrix gi = mat_inv(gamma);
    for (const MonoMatrix* m : {&alpha, &beta}) {
        MonoMatrix lhs = mat_mul(mat_mul(gamma, *m), gi).with_c_cleared();
        MonoMatrix rhs = galois_act(s, *m).with_c_cleared();
        if (!mat_equal(lhs, rhs)) return false;
    }
    return true;
}

// --- JSON dump ---------------------------------------------------------------

std::string mat_to_json(const MonoMatrix& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (int r = 0; r < m.size(); ++r)
        for (int c = 0; c < m.size(); ++c) {
            const CycMono& e = m.at(r, c);
            if (e.zero) continue;
            entries.push_back({r, c, e.rot.num(), e.rot.den(), e.q.num(), e.q.den()});
        }
    nlohmann::json j{{"size", m.size()}, {"entries", entries}};
    return j.dump();
}

MonoMatrix mat_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    MonoMatrix m(j.at("size").get<int>());
    for (const auto& e : j.at("entries")) {
        long long en = e.at(2).get<long long>();
        long long nn = e.at(3).get<long long>();
        long long qn = e.at(4).get<long long>();
        long long qd = e.at(5).get<long long>();
        m.set(e.at(0).get<int>(), e.at(1).get<int>(),
              CycMono::zeta(en, nn, Rat(qn, qd)));
    }
    return m;
}

}  // namespace stcurves::cyclo
