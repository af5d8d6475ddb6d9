#include "stcurves/mtrank.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace stcurves::mtrank {

MTInstance load_mt_instance(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    MTInstance m;
    m.rows = j.at("rows").get<int>();
    m.cols = j.at("cols").get<int>();
    m.entries = j.at("entries").get<std::vector<long long>>();
    m.blocks = j.at("blocks").get<std::vector<int>>();
    if ((int)m.entries.size() != m.rows * m.cols)
        throw std::invalid_argument("MTInstance: entries size mismatch");
    if (std::accumulate(m.blocks.begin(), m.blocks.end(), 0) != m.cols)
        throw std::invalid_argument("MTInstance: blocks must partition the columns");
    return m;
}

MTInstance load_mt_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_mt_instance(ss.str());
}

namespace {

using i128 = __int128;

// Fraction-free (Bareiss) elimination to row echelon form.  Returns the
// echelon matrix together with the pivot column of each used row.
struct Echelon {
    int rows, cols;
    std::vector<i128> a;  // row-major
    std::vector<int> pivot_col;  // one entry per pivot row

    i128& at(int r, int c) { return a[size_t(r) * cols + c]; }
    i128 at(int r, int c) const { return a[size_t(r) * cols + c]; }
};

Echelon echelonize(const std::vector<long long>& entries, int rows, int cols) {
    Echelon e{rows, cols, std::vector<i128>(entries.begin(), entries.end()), {}};
    int row = 0;
    i128 prev = 1;
    for (int col = 0; col < cols && row < rows; ++col) {
        int piv = -1;
        for (int r = row; r < rows; ++r)
            if (e.at(r, col) != 0) { piv = r; break; }
        if (piv == -1) continue;
        if (piv != row)
            for (int c = 0; c < cols; ++c) std::swap(e.at(piv, c), e.at(row, c));
        for (int r = row + 1; r < rows; ++r) {
            for (int c = col + 1; c < cols; ++c)
                e.at(r, c) = (e.at(row, col) * e.at(r, c) -
                              e.at(r, col) * e.at(row, c)) /
                             prev;
            e.at(r, col) = 0;
        }
        prev = e.at(row, col);
        e.pivot_col.push_back(col);
        ++row;
    }
    return e;
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { i128 t = a % b; a = b; b = t; }
    return a;
}

long long narrow(i128 v) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
        throw std::overflow_error("mtrank: entry overflow");
    return (long long)v;
}

}  // namespace

int rank(const MTInstance& m) {
    return (int)echelonize(m.entries, m.rows, m.cols).pivot_col.size();
}

std::vector<std::vector<long long>> kernel_basis(const MTInstance& m) {
    Echelon e = echelonize(m.entries, m.rows, m.cols);
    int r = (int)e.pivot_col.size();

    std::vector<bool> is_pivot(size_t(m.cols), false);
    for (int c : e.pivot_col) is_pivot[size_t(c)] = true;

    std::vector<std::vector<long long>> basis;
    for (int free = 0; free < m.cols; ++free) {
        if (is_pivot[size_t(free)]) continue;
        // Back-substitute with exact rationals kept as (num, den) pairs over a
        // running common denominator: v[free] = 1, pivots solved bottom-up.
        std::vector<i128> num(size_t(m.cols), 0), den(size_t(m.cols), 1);
        num[size_t(free)] = 1;
        for (int pr = r - 1; pr >= 0; --pr) {
            int pc = e.pivot_col[size_t(pr)];
            // sum over columns right of the pivot
            i128 sn = 0, sd = 1;
            for (int c = pc + 1; c < m.cols; ++c) {
                if (e.at(pr, c) == 0 || num[size_t(c)] == 0) continue;
                i128 tn = e.at(pr, c) * num[size_t(c)];
                i128 td = den[size_t(c)];
                i128 nn = sn * td + tn * sd;
                i128 nd = sd * td;
                i128 g = gcd128(nn, nd);
                if (g > 1) { nn /= g; nd /= g; }
                sn = nn;
                sd = nd;
            }
            // pivot * v[pc] + sum = 0
            i128 nn = -sn, nd = sd * e.at(pr, pc);
            if (nd < 0) { nd = -nd; nn = -nn; }
            i128 g = gcd128(nn, nd);
            if (g > 1) { nn /= g; nd /= g; }
            num[size_t(pc)] = nn;
            den[size_t(pc)] = nd;
        }
        i128 lcm = 1;
        for (int c = 0; c < m.cols; ++c)
            lcm = lcm / gcd128(lcm, den[size_t(c)]) * den[size_t(c)];
        std::vector<long long> v(size_t(m.cols));
        for (int c = 0; c < m.cols; ++c)
            v[size_t(c)] = narrow(num[size_t(c)] * (lcm / den[size_t(c)]));
        basis.push_back(std::move(v));
    }
    return basis;
}

MTVerdict factor_index_check(const MTInstance& m) {
    std::vector<std::vector<long long>> kernel = kernel_basis(m);
    MTVerdict verdict;
    verdict.nondegenerate = true;

    int col0 = 0;
    for (int width : m.blocks) {
        // Stack the kernel basis with the block's coordinate vectors and take
        // the exact rank of the span.
        int extra = width;
        int rows = int(kernel.size()) + extra;
        std::vector<long long> stacked(size_t(rows) * m.cols, 0);
        for (size_t i = 0; i < kernel.size(); ++i)
            for (int c = 0; c < m.cols; ++c)
                stacked[i * size_t(m.cols) + size_t(c)] = kernel[i][size_t(c)];
        for (int i = 0; i < extra; ++i)
            stacked[(kernel.size() + size_t(i)) * size_t(m.cols) +
                    size_t(col0 + i)] = 1;
        MTInstance span{rows, m.cols, std::move(stacked), {m.cols}};
        int dim = rank(span);
        verdict.factors.push_back(dim < m.cols ? FactorIndex::InfiniteIndex
                                               : FactorIndex::FiniteIndex);
        if (dim >= m.cols) verdict.nondegenerate = false;
        col0 += width;
    }
    return verdict;
}

}  // namespace stcurves::mtrank
