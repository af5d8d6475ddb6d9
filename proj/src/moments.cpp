#include "stcurves/moments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <json.hpp>

namespace stcurves::moments {

using cyclo::CycMono;
using cyclo::MonoMatrix;
using curves::CurveSpec;
using curves::Family;
using stgroup::TorusDescriptor;

// --- CycSum ------------------------------------------------------------------

CycSum::CycSum(long long root_order) : n_(root_order) {
    if (n_ < 2 || (n_ & (n_ - 1)) != 0)
        throw std::invalid_argument("CycSum: root order must be a power of two >= 2");
    c_.assign(size_t(n_ / 2), 0);
}

bool CycSum::is_zero() const {
    for (__int128 v : c_)
        if (v != 0) return false;
    return true;
}

bool CycSum::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

void CycSum::add_at(long long idx, __int128 v) {
    idx %= n_;
    if (idx < 0) idx += n_;
    if (idx >= n_ / 2)
        c_[size_t(idx - n_ / 2)] -= v;
    else
        c_[size_t(idx)] += v;
}

void CycSum::add_mono(const CycMono& m, __int128 scale) {
    if (m.zero || scale == 0) return;
    if (!m.q.is_zero())
        throw std::invalid_argument("CycSum: monomial carries a formal c power");
    if (n_ % m.rot.den() != 0)
        throw std::invalid_argument("CycSum: rotation does not live in Z[zeta_N]");
    add_at(m.rot.num() * (n_ / m.rot.den()), scale);
}

CycSum& CycSum::operator+=(const CycSum& other) {
    if (other.n_ != n_) throw std::invalid_argument("CycSum: mixed root orders");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += other.c_[i];
    return *this;
}

CycSum operator*(const CycSum& a, const CycSum& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("CycSum: mixed root orders");
    CycSum out(a.n_);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] == 0) continue;
            out.add_at((long long)(i + j), a.c_[i] * b.c_[j]);
        }
    }
    return out;
}

bool CycSum::operator==(const CycSum& other) const {
    return n_ == other.n_ && c_ == other.c_;
}

namespace {

std::string i128_str(__int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? (unsigned __int128)(-v) : (unsigned __int128)v;
    std::string s;
    while (u) { s.push_back(char('0' + int(u % 10))); u /= 10; }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

long long narrow_i128(__int128 v) {
    if (v > __int128(INT64_MAX) || v < __int128(INT64_MIN))
        throw std::overflow_error("moment value exceeds 64 bits");
    return (long long)v;
}

}  // namespace

std::string CycSum::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << i128_str(c_[i]);
        if (i > 0) os << "*z^" << i << "/" << n_;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

// --- trace polynomial ----------------------------------------------------------

TraceLaurent trace_laurent(const MonoMatrix& coset, const TorusDescriptor& desc,
                           long long root_order) {
    if (coset.size() != 2 * desc.g)
        throw std::invalid_argument("trace_laurent: size mismatch");
    TraceLaurent p;
    p.num_angles = desc.num_angles;
    p.root_order = root_order;
    for (int b = 0; b < desc.g; ++b) {
        int a = desc.angle_of_block[size_t(b)];
        const CycMono& top = coset.at(2 * b, 2 * b);
        const CycMono& bot = coset.at(2 * b + 1, 2 * b + 1);
        for (int s = 0; s < 2; ++s) {
            const CycMono& m = s == 0 ? top : bot;
            if (m.zero) continue;
            std::vector<int8_t> key(size_t(desc.num_angles), 0);
            key[size_t(a)] = s == 0 ? 1 : -1;
            auto [it, fresh] = p.terms.try_emplace(key, CycSum(root_order));
            it->second.add_mono(m);
            if (it->second.is_zero()) p.terms.erase(it);
        }
    }
    return p;
}

namespace {

int l1_norm(const std::vector<int8_t>& v) {
    int s = 0;
    for (int8_t x : v) s += x < 0 ? -x : x;
    return s;
}

}  // namespace

std::vector<CycSum> exact_moments_up_to(const TraceLaurent& p, int nmax) {
    if (nmax < 0) throw std::invalid_argument("exact_moments_up_to: n >= 0");
    std::vector<CycSum> out;
    std::map<std::vector<int8_t>, CycSum> pow;  // running P^k
    pow.emplace(std::vector<int8_t>(size_t(p.num_angles), 0), CycSum(p.root_order));
    pow.begin()->second.add_mono(CycMono::one());
    for (int k = 1; k <= nmax; ++k) {
        std::map<std::vector<int8_t>, CycSum> next;
        for (const auto& [ve, ce] : pow) {
            for (const auto& [vf, cf] : p.terms) {
                std::vector<int8_t> key(ve.size());
                for (size_t i = 0; i < key.size(); ++i)
                    key[i] = int8_t(ve[i] + vf[i]);
                // A term farther than nmax - k steps from the origin cannot
                // reach the constant term by step nmax.
                if (l1_norm(key) > nmax - k) continue;
                auto [it, fresh] = next.try_emplace(std::move(key), CycSum(p.root_order));
                it->second += ce * cf;
            }
        }
        for (auto it = next.begin(); it != next.end();)
            it = it->second.is_zero() ? next.erase(it) : std::next(it);
        pow = std::move(next);
        std::vector<int8_t> origin(size_t(p.num_angles), 0);
        auto it = pow.find(origin);
        out.push_back(it == pow.end() ? CycSum(p.root_order) : it->second);
    }
    return out;
}

CycSum exact_moment(const TraceLaurent& p, int n) {
    if (n == 0) {
        CycSum one(p.root_order);
        one.add_mono(CycMono::one());
        return one;
    }
    return exact_moments_up_to(p, n).back();
}

// --- group averages -------------------------------------------------------------

MomentReport group_exact_moments(const CurveSpec& spec, int n_max) {
    if (n_max > 12)
        throw std::invalid_argument("group_exact_moments: n_max <= 12");
    TorusDescriptor desc = stgroup::identity_descriptor(spec);
    stgroup::GeneratorSet gens = stgroup::generators(spec);
    stgroup::CosetList cosets = stgroup::component_group(spec);
    long long root_order = spec.family == Family::TwoPowPlusOne
                               ? (1LL << (spec.param + 1))
                               : (1LL << spec.param);

    std::vector<CycSum> sums(size_t(n_max), CycSum(root_order));
    for (const MonoMatrix& rep : cosets.representatives) {
        TraceLaurent p = trace_laurent(rep, desc, root_order);
        if (p.is_zero()) continue;
        std::vector<CycSum> per = exact_moments_up_to(p, n_max);
        for (int n = 1; n <= n_max; ++n) sums[size_t(n - 1)] += per[size_t(n - 1)];
    }

    MomentReport rep{spec};
    rep.statistic = 1;
    rep.twist_class = gens.twist_class;
    rep.cosets = cosets.size();
    for (int n = 1; n <= n_max; ++n) {
        const CycSum& s = sums[size_t(n - 1)];
        if (!s.is_rational())
            throw std::logic_error("group_exact_moments: group average not rational");
        rep.orders.push_back(n);
        rep.exact.push_back(Rat(narrow_i128(s.rational_part()),
                                (long long)cosets.size()));
    }
    return rep;
}

long long reference_u1_moments(int n, U1Variant variant) {
    if (n < 0) throw std::invalid_argument("reference_u1_moments: n >= 0");
    if (n & 1) return 0;
    long long b = 1;
    for (int k = 1; k <= n / 2; ++k) b = b * (n - k + 1) / k;  // binom(n, n/2)
    return variant == U1Variant::U1 ? b : b << n;
}

// --- Monte Carlo -----------------------------------------------------------------

namespace {

uint64_t splitmix_step(uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based stream: one independent generator per (seed, sample index).
struct SampleRng {
    uint64_t state;
    SampleRng(uint64_t seed, uint64_t index) {
        state = seed ^ 0x6a09e667f3bcc909ULL;
        splitmix_step(state);
        state ^= index * 0x9e3779b97f4a7c15ULL;
        splitmix_step(state);
    }
    uint64_t next_u64() { return splitmix_step(state); }
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }
};

}  // namespace

std::vector<double> charpoly_coeffs(const std::vector<std::complex<double>>& m,
                                    int size) {
    if (size % 2 || (int)m.size() != size * size)
        throw std::invalid_argument("charpoly_coeffs: need a square 2g x 2g matrix");
    Eigen::MatrixXcd mat(size, size);
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) mat(r, c) = m[size_t(r) * size + c];

    double unitary_err = (mat.adjoint() * mat - Eigen::MatrixXcd::Identity(size, size))
                             .cwiseAbs()
                             .maxCoeff();
    if (unitary_err > 1e-9)
        throw std::invalid_argument("charpoly_coeffs: matrix is not unitary");

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(mat, false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("charpoly_coeffs: eigensolver failed");
    Eigen::VectorXcd lambda = solver.eigenvalues();
    for (int i = 0; i < size; ++i)
        if (std::abs(std::abs(lambda(i)) - 1.0) > 1e-9)
            throw std::runtime_error("charpoly_coeffs: eigenvalue off the unit circle");

    // Elementary symmetric functions via prod (T - lambda_i), coefficients
    // kept in descending order; poly[k] = (-1)^k e_k and a_i = e_i.
    std::vector<std::complex<double>> poly{1.0};
    for (int i = 0; i < size; ++i) {
        poly.push_back(0.0);
        for (size_t k = poly.size() - 1; k > 0; --k)
            poly[k] = poly[k] - lambda(i) * poly[k - 1];
    }
    int g = size / 2;
    std::vector<double> a(size_t(g));
    double scale = 1.0;
    for (int i = 1; i <= g; ++i) {
        scale = scale * double(size - i + 1) / double(i);  // binom(2g, i)
        std::complex<double> e = poly[size_t(i)] * ((i & 1) ? -1.0 : 1.0);
        if (std::abs(e.imag()) > 1e-9 * std::max(1.0, scale))
            throw std::runtime_error("charpoly_coeffs: coefficient not real");
        a[size_t(i - 1)] = e.real();
    }
    return a;
}

McResult mc_moments(const CurveSpec& spec, int statistic, int n_max,
                    size_t samples, uint64_t seed, int threads) {
    int g = curves::genus(spec);
    if (statistic < 1 || statistic > g)
        throw std::invalid_argument("mc_moments: statistic index out of range");
    if (samples < 1) throw std::invalid_argument("mc_moments: samples >= 1");
    if (threads < 1) threads = 1;

    TorusDescriptor desc = stgroup::identity_descriptor(spec);
    stgroup::CosetList cosets = stgroup::component_group(spec);
    int n = 2 * g;

    // Numeric coset matrices once; generators are unit monomials, so c never
    // enters the evaluation.
    std::vector<std::vector<std::complex<double>>> reps;
    for (const MonoMatrix& rep : cosets.representatives) {
        std::vector<std::complex<double>> num(size_t(n) * n, 0.0);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (!rep.at(r, c).zero)
                    num[size_t(r) * n + c] = cyclo::mono_eval(rep.at(r, c), 1.0);
        reps.push_back(std::move(num));
    }

    const size_t kBlock = 4096;
    size_t nblocks = (samples + kBlock - 1) / kBlock;
    std::vector<std::vector<double>> blk_sum(nblocks, std::vector<double>(n_max, 0.0));
    std::vector<std::vector<double>> blk_sq(nblocks, std::vector<double>(n_max, 0.0));

    std::atomic<size_t> next_block{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&]() {
        try {
        std::vector<std::complex<double>> mat(size_t(n) * n);
        for (;;) {
            size_t b = next_block.fetch_add(1);
            if (b >= nblocks) break;
            size_t lo = b * kBlock, hi = std::min(samples, lo + kBlock);
            for (size_t idx = lo; idx < hi; ++idx) {
                SampleRng rng(seed, idx);
                size_t which = size_t(rng.next_u64() % reps.size());
                std::vector<std::complex<double>> u(size_t(desc.num_angles));
                for (int a = 0; a < desc.num_angles; ++a)
                    u[size_t(a)] = std::polar(1.0, 2.0 * std::numbers::pi * rng.next_unit());
                const auto& base = reps[which];
                for (int blk = 0; blk < desc.g; ++blk) {
                    std::complex<double> ua = u[size_t(desc.angle_of_block[size_t(blk)])];
                    for (int c = 0; c < n; ++c) {
                        mat[size_t(2 * blk) * n + c] = ua * base[size_t(2 * blk) * n + c];
                        mat[size_t(2 * blk + 1) * n + c] =
                            std::conj(ua) * base[size_t(2 * blk + 1) * n + c];
                    }
                }
                std::vector<double> a = charpoly_coeffs(mat, n);
                double x = a[size_t(statistic - 1)];
                double pw = 1.0;
                for (int k = 1; k <= n_max; ++k) {
                    pw *= x;
                    blk_sum[b][size_t(k - 1)] += pw;
                    blk_sq[b][size_t(k - 1)] += pw * pw;
                }
            }
        }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mu);
            if (!failure) failure = std::current_exception();
        }
    };
    {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    McResult out;
    out.samples = samples;
    out.seed = seed;
    out.estimates.assign(size_t(n_max), 0.0);
    out.stderrs.assign(size_t(n_max), 0.0);
    std::vector<double> sq(size_t(n_max), 0.0);
    for (size_t b = 0; b < nblocks; ++b)
        for (int k = 0; k < n_max; ++k) {
            out.estimates[size_t(k)] += blk_sum[b][size_t(k)];
            sq[size_t(k)] += blk_sq[b][size_t(k)];
        }
    for (int k = 0; k < n_max; ++k) {
        double mean = out.estimates[size_t(k)] / double(samples);
        double mean_sq = sq[size_t(k)] / double(samples);
        out.estimates[size_t(k)] = mean;
        double var = std::max(0.0, mean_sq - mean * mean);
        out.stderrs[size_t(k)] = std::sqrt(var / double(samples));
    }
    return out;
}

MomentReport st_moments(const CurveSpec& spec, int statistic, int n_max,
                        size_t samples, uint64_t seed, int threads) {
    MomentReport rep{spec};
    if (statistic == 1) {
        rep = group_exact_moments(spec, n_max);
    } else {
        rep.statistic = statistic;
        rep.twist_class = stgroup::generators(spec).twist_class;
        rep.cosets = stgroup::component_group(spec).size();
        for (int k = 1; k <= n_max; ++k) rep.orders.push_back(k);
    }
    if (samples > 0)
        rep.mc = mc_moments(spec, statistic, n_max, samples, seed, threads);
    return rep;
}

// --- emission --------------------------------------------------------------------

std::string report_to_json(const MomentReport& rep) {
    nlohmann::json j;
    j["family"] = rep.spec.family_name();
    j["param"] = rep.spec.param;
    j["c"] = rep.spec.c;
    j["twist_class"] = rep.twist_class;
    j["cosets"] = rep.cosets;
    j["statistic"] = rep.statistic;
    j["orders"] = rep.orders;
    if (!rep.exact.empty()) {
        std::vector<std::string> ex;
        for (const Rat& r : rep.exact) ex.push_back(r.str());
        j["exact"] = ex;
    }
    if (rep.mc.samples > 0) {
        j["mc"] = {{"samples", rep.mc.samples},
                   {"seed", rep.mc.seed},
                   {"estimates", rep.mc.estimates},
                   {"stderr", rep.mc.stderrs}};
    }
    return j.dump(2);
}

std::string report_to_csv(const MomentReport& rep) {
    std::ostringstream os;
    os << "row";
    for (int n : rep.orders) os << ",M" << n;
    os << "\n";
    if (!rep.exact.empty()) {
        os << "mu" << rep.statistic;
        for (const Rat& r : rep.exact) os << ',' << r.str();
        os << "\n";
    }
    if (rep.mc.samples > 0) {
        os << "mc_a" << rep.statistic;
        for (double v : rep.mc.estimates) os << ',' << v;
        os << "\n";
        os << "mc_stderr";
        for (double v : rep.mc.stderrs) os << ',' << v;
        os << "\n";
    }
    return os.str();
}

std::string report_to_table(const MomentReport& rep) {
    std::ostringstream os;
    os << rep.spec.model() << "   [class a=" << rep.twist_class
       << ", cosets=" << rep.cosets << "]\n";
    os << "      ";
    for (int n : rep.orders) os << "M" << n << "\t";
    os << "\n";
    if (!rep.exact.empty()) {
        os << "mu_" << rep.statistic << "  ";
        for (const Rat& r : rep.exact) os << r.str() << "\t";
        os << "\n";
    }
    if (rep.mc.samples > 0) {
        os << "a_" << rep.statistic << " (mc) ";
        for (double v : rep.mc.estimates) os << v << "\t";
        os << "\n";
    }
    return os.str();
}

}  // namespace stcurves::moments
