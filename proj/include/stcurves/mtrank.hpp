#pragma once

#include <string>
#include <vector>

namespace stcurves::mtrank {

// Integer matrix with a column-block partition; the blocks mark the factor
// subspaces of Z^{b_1} x ... x Z^{b_k}.
struct MTInstance {
    int rows = 0;
    int cols = 0;
    std::vector<long long> entries;  // row-major
    std::vector<int> blocks;         // widths, sum = cols

    long long at(int r, int c) const { return entries[size_t(r) * cols + c]; }
};

MTInstance load_mt_instance(const std::string& json_text);
MTInstance load_mt_instance_file(const std::string& path);

// Exact basis of the rational kernel via fraction-free elimination; vectors
// are returned with cleared denominators (integer entries, M v = 0 exactly).
std::vector<std::vector<long long>> kernel_basis(const MTInstance& m);

// Exact rank over Q.
int rank(const MTInstance& m);

enum class FactorIndex { InfiniteIndex, FiniteIndex };

struct MTVerdict {
    std::vector<FactorIndex> factors;
    bool nondegenerate = false;  // true iff every factor has infinite index
};

// For each column block B: the span of ker(M) together with B's coordinate
// subspace has infinite index in Z^cols iff its dimension stays below cols.
MTVerdict factor_index_check(const MTInstance& m);

}  // namespace stcurves::mtrank
