#include "stcurves/curves.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace stcurves::curves {

CurveSpec::CurveSpec(Family f, int p, long long cc) : family(f), param(p), c(cc) {
    if (c == 0) throw std::invalid_argument("CurveSpec: c must be nonzero");
    if (family == Family::PowTwo && param < 2)
        throw std::invalid_argument("CurveSpec: m >= 2");
    if (family == Family::TwoPowPlusOne && param < 1)
        throw std::invalid_argument("CurveSpec: d >= 1");
}

std::string CurveSpec::family_name() const {
    return family == Family::PowTwo ? "pow2m" : "twopow";
}

std::string CurveSpec::model() const {
    std::ostringstream os;
    if (family == Family::PowTwo)
        os << "y^2 = x^" << (1LL << param) << " - (" << c << ")";
    else
        os << "y^2 = x^" << ((1LL << param) + 1) << " - (" << c << ")x";
    return os.str();
}

int genus(const CurveSpec& spec) {
    if (spec.family == Family::PowTwo) return (1 << (spec.param - 1)) - 1;
    return 1 << (spec.param - 1);
}

arith::Poly curve_poly(const CurveSpec& spec) {
    if (spec.family == Family::PowTwo)
        return arith::Poly::x_pow_minus_const(1 << spec.param, spec.c);
    return arith::Poly::x_pow_minus_cx((1 << spec.param) + 1, spec.c);
}

bool is_good_prime(const CurveSpec& spec, uint64_t p) {
    if (p == 2) return false;
    long long r = spec.c % (long long)p;
    return r != 0;
}

namespace {

uint64_t isqrt_u64(uint64_t n) {
    uint64_t r = uint64_t(std::sqrt(double(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

long long frobenius_trace(const CurveSpec& spec, uint64_t p) {
    if (!is_good_prime(spec, p))
        throw std::invalid_argument("frobenius_trace: bad prime for this curve");
    uint64_t affine = arith::affine_count(curve_poly(spec), p);
    uint64_t at_infinity = spec.family == Family::PowTwo ? 2 : 1;
    long long t = (long long)p + 1 - (long long)(affine + at_infinity);
    long long bound = 2LL * genus(spec) * (long long)(2 * isqrt_u64(p) + 2);
    if (t > bound || t < -bound)
        throw std::logic_error("frobenius_trace: Weil bound violated");
    return t;
}

double normalized_a1(const CurveSpec& spec, uint64_t p) {
    return double(frobenius_trace(spec, p)) / std::sqrt(double(p));
}

std::vector<int> decompose_factors(int m) {
    if (m < 2) throw std::invalid_argument("decompose_factors: m >= 2");
    std::vector<int> out;
    for (int d = 1; d <= m - 1; ++d) out.push_back(d);
    return out;
}

AdditivityReport verify_trace_additivity(int m, long long c, uint64_t pmax) {
    AdditivityReport rep;
    rep.m = m;
    rep.c = c;
    rep.pmax = pmax;
    CurveSpec big = CurveSpec::pow_two(m, c);
    std::vector<CurveSpec> factors;
    for (int d : decompose_factors(m))
        factors.push_back(CurveSpec::two_pow_plus_one(d, c));

    arith::PrimeList pl = arith::sieve_primes(pmax);
    for (uint64_t p : pl.primes) {
        if (!is_good_prime(big, p)) continue;
        long long lhs = frobenius_trace(big, p);
        long long rhs = 0;
        for (const CurveSpec& f : factors) rhs += frobenius_trace(f, p);
        ++rep.primes_checked;
        if (lhs != rhs) rep.violations.push_back({p, lhs, rhs});
    }
    return rep;
}

// --- sweep and cache ---------------------------------------------------------

std::vector<TraceRecord> load_trace_cache(const std::string& path,
                                          const CurveSpec& spec) {
    std::vector<TraceRecord> out;
    std::ifstream in(path);
    if (!in) return out;
    std::string line;
    if (!std::getline(in, line)) return out;
    if (line != "family,param,c,p,t")
        throw std::runtime_error("trace cache: unexpected header in " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string fam, tok;
        std::getline(ss, fam, ',');
        std::getline(ss, tok, ',');
        int param = std::stoi(tok);
        std::getline(ss, tok, ',');
        long long c = std::stoll(tok);
        std::getline(ss, tok, ',');
        uint64_t p = std::stoull(tok);
        std::getline(ss, tok, ',');
        long long t = std::stoll(tok);
        if (fam != spec.family_name() || param != spec.param || c != spec.c)
            continue;
        out.push_back({p, t, double(t) / std::sqrt(double(p))});
    }
    std::sort(out.begin(), out.end(),
              [](const TraceRecord& a, const TraceRecord& b) { return a.p < b.p; });
    return out;
}

void write_trace_cache(const std::string& path, const CurveSpec& spec,
                       const std::vector<TraceRecord>& records) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("trace cache: cannot write " + path);
    out << "family,param,c,p,t\n";
    for (const TraceRecord& r : records)
        out << spec.family_name() << ',' << spec.param << ',' << spec.c << ','
            << r.p << ',' << r.t << '\n';
}

namespace {

void append_trace_cache(const std::string& path, const CurveSpec& spec,
                        const std::vector<TraceRecord>& records, bool fresh) {
    std::ofstream out(path, fresh ? std::ios::trunc : std::ios::app);
    if (!out) throw std::runtime_error("trace cache: cannot write " + path);
    if (fresh) out << "family,param,c,p,t\n";
    for (const TraceRecord& r : records)
        out << spec.family_name() << ',' << spec.param << ',' << spec.c << ','
            << r.p << ',' << r.t << '\n';
}

}  // namespace

std::vector<TraceRecord> sweep_traces(const CurveSpec& spec, uint64_t pmax,
                                      int threads, const std::string& cache_path) {
    std::vector<TraceRecord> cached;
    if (!cache_path.empty())
        cached = load_trace_cache(cache_path, spec);

    std::set<uint64_t> have;
    for (const TraceRecord& r : cached) have.insert(r.p);

    arith::PrimeList pl = arith::sieve_primes(std::max<uint64_t>(pmax, 2));
    std::vector<uint64_t> todo;
    for (uint64_t p : pl.primes)
        if (p <= pmax && is_good_prime(spec, p) && !have.count(p))
            todo.push_back(p);

    if (threads < 1) threads = 1;
    std::vector<TraceRecord> fresh(todo.size());
    {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= todo.size()) break;
                uint64_t p = todo[i];
                long long t = frobenius_trace(spec, p);
                fresh[i] = {p, t, double(t) / std::sqrt(double(p))};
            }
        };
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (!cache_path.empty() && !fresh.empty()) {
        bool extends = cached.empty() || fresh.front().p > cached.back().p;
        if (extends) {
            append_trace_cache(cache_path, spec, fresh, cached.empty());
        } else {
            std::vector<TraceRecord> all = cached;
            all.insert(all.end(), fresh.begin(), fresh.end());
            std::sort(all.begin(), all.end(),
                      [](const TraceRecord& a, const TraceRecord& b) {
                          return a.p < b.p;
                      });
            write_trace_cache(cache_path, spec, all);
        }
    }

    std::vector<TraceRecord> out;
    for (const TraceRecord& r : cached)
        if (r.p <= pmax) out.push_back(r);
    out.insert(out.end(), fresh.begin(), fresh.end());
    std::sort(out.begin(), out.end(),
              [](const TraceRecord& a, const TraceRecord& b) { return a.p < b.p; });
    return out;
}

namespace {

std::string cache_file_for(const std::string& dir, const CurveSpec& spec) {
    if (dir.empty()) return "";
    std::filesystem::create_directories(dir);
    std::ostringstream os;
    os << dir << "/traces-" << spec.family_name() << "-" << spec.param << "-c"
       << spec.c << ".csv";
    return os.str();
}

}  // namespace

CurveMoments curve_moments(const CurveSpec& spec, uint64_t pmax, int nmax,
                           int threads, const std::string& cache_dir) {
    if (pmax < 3) throw std::invalid_argument("curve_moments: pmax >= 3");
    CurveMoments cm{spec};
    cm.pmax = pmax;

    // Per-prime a1 of the spec; PowTwo traces come from the factor sum.
    std::vector<std::pair<uint64_t, long long>> traces;
    if (spec.family == Family::TwoPowPlusOne) {
        auto recs = sweep_traces(spec, pmax, threads, cache_file_for(cache_dir, spec));
        for (const auto& r : recs) traces.push_back({r.p, r.t});
    } else {
        std::vector<std::vector<TraceRecord>> per_factor;
        for (int d : decompose_factors(spec.param)) {
            CurveSpec f = CurveSpec::two_pow_plus_one(d, spec.c);
            per_factor.push_back(
                sweep_traces(f, pmax, threads, cache_file_for(cache_dir, f)));
        }
        for (size_t i = 0; i < per_factor.front().size(); ++i) {
            uint64_t p = per_factor.front()[i].p;
            long long t = 0;
            for (const auto& recs : per_factor) {
                if (recs[i].p != p)
                    throw std::logic_error("curve_moments: factor sweeps disagree");
                t += recs[i].t;
            }
            traces.push_back({p, t});
        }
    }

    cm.primes = traces.size();
    for (int n = 1; n <= nmax; ++n) cm.orders.push_back(n);
    cm.moments.assign(size_t(nmax), 0.0);

    // Fixed-block pairwise accumulation: identical result for any thread count.
    const size_t kBlock = 4096;
    size_t nblocks = (traces.size() + kBlock - 1) / kBlock;
    std::vector<std::vector<double>> block_sums(nblocks,
                                                std::vector<double>(nmax, 0.0));
    for (size_t b = 0; b < nblocks; ++b) {
        size_t lo = b * kBlock, hi = std::min(traces.size(), lo + kBlock);
        for (size_t i = lo; i < hi; ++i) {
            double a1 = double(traces[i].second) / std::sqrt(double(traces[i].first));
            double pw = 1.0;
            for (int n = 1; n <= nmax; ++n) {
                pw *= a1;
                block_sums[b][size_t(n - 1)] += pw;
            }
        }
    }
    for (size_t b = 0; b < nblocks; ++b)
        for (int n = 0; n < nmax; ++n) cm.moments[size_t(n)] += block_sums[b][size_t(n)];
    if (!traces.empty())
        for (double& v : cm.moments) v /= double(traces.size());
    return cm;
}

}  // namespace stcurves::curves
