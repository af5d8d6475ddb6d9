#pragma once

#include <vector>

#include "stcurves/curves.hpp"
#include "stcurves/cyclo.hpp"

namespace stcurves::stgroup {

// The identity component ST^0: block-diagonal matrices with block i equal to
// diag(u_{a_i}, conj u_{a_i}), angles indexed by angle_of_block.  Blocks j and
// g-1-j share an angle within each factor: ST^0 centralizes the antidiagonal
// endomorphism beta, which forces the palindromic pairing.
struct TorusDescriptor {
    int g = 0;                  // number of 2x2 blocks
    int num_angles = 0;         // r
    std::vector<int> angle_of_block;
};

TorusDescriptor identity_descriptor(const curves::CurveSpec& spec);

struct GeneratorSet {
    cyclo::MonoMatrix gamma;
    cyclo::MonoMatrix gamma_j;
    cyclo::MonoMatrix gamma_c;
    long long twist_class = 1;  // a, a power of two
};

// Largest power of two a <= N/2 with c an a-th power in Q(zeta_N), N >= 8:
// a | v_p(|c|) for every odd prime p and (a/2) | v_2(|c|) (sqrt2 lies in the
// field; signs are absorbed by roots of unity).
long long classify_c(long long c, long long n);

GeneratorSet generators(const curves::CurveSpec& spec);

// The symplectic form diag(J, ..., J) on 2g coordinates.
cyclo::MonoMatrix symplectic_form(int g);

// M^H M = I and M^T Omega M = Omega, as exact monomial identities.
bool check_usp_membership(const cyclo::MonoMatrix& m);

// True iff m is block-diagonal with block i = diag(u_i, conj u_i), the u_i
// pure roots of unity, equal across blocks that share an angle.
bool is_torus_point(const cyclo::MonoMatrix& m, const TorusDescriptor& desc);

// g1 and g2 lie in the same ST^0-coset.
bool coset_equal(const cyclo::MonoMatrix& g1, const cyclo::MonoMatrix& g2,
                 const TorusDescriptor& desc);

// gen T gen^{-1} stays torus-shaped for every torus point T (checked on the
// angle generators).
bool normalizes_torus(const cyclo::MonoMatrix& gen, const TorusDescriptor& desc);

struct CosetList {
    std::vector<cyclo::MonoMatrix> representatives;  // identity first
    size_t size() const { return representatives.size(); }
};

// Breadth-first closure of {gamma, gamma_J, gamma_c} modulo ST^0, deduplicated
// with coset_equal.  Throws if the closure exceeds the field-degree bound
// (2^{2d} resp. 2^{2m-2}) — that signals a construction bug.
CosetList component_group(const curves::CurveSpec& spec);
CosetList component_group(const GeneratorSet& gens, const TorusDescriptor& desc,
                          size_t cap);

}  // namespace stcurves::stgroup
