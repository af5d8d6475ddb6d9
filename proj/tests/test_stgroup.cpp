#include <doctest.h>

#include "stcurves/stgroup.hpp"

using namespace stcurves;
using namespace stcurves::cyclo;
using namespace stcurves::stgroup;
using curves::CurveSpec;

TEST_CASE("identity descriptors") {
    // d=1: U(1)
    TorusDescriptor e = identity_descriptor(CurveSpec::two_pow_plus_one(1, 1));
    CHECK(e.g == 1);
    CHECK(e.num_angles == 1);
    CHECK(e.angle_of_block == std::vector<int>{0});

    // d=3: (U(1)^2)_2 with blocks j and g-1-j sharing an angle
    TorusDescriptor d3 = identity_descriptor(CurveSpec::two_pow_plus_one(3, 3));
    CHECK(d3.g == 4);
    CHECK(d3.num_angles == 2);
    CHECK(d3.angle_of_block == std::vector<int>{0, 1, 1, 0});

    // m=4: U(1) x (U(1)^3)_2, factor ranges disjoint
    TorusDescriptor m4 = identity_descriptor(CurveSpec::pow_two(4, 1));
    CHECK(m4.g == 7);
    CHECK(m4.num_angles == 4);
    CHECK(m4.angle_of_block == std::vector<int>{0, 1, 1, 2, 3, 3, 2});
}

TEST_CASE("classify_c against the table captions") {
    CHECK(classify_c(3, 16) == 1);
    CHECK(classify_c(5, 16) == 1);
    CHECK(classify_c(6, 16) == 1);
    CHECK(classify_c(7, 16) == 1);
    CHECK(classify_c(2, 16) == 2);
    CHECK(classify_c(8, 16) == 2);
    CHECK(classify_c(32, 16) == 2);
    CHECK(classify_c(4, 16) == 4);
    CHECK(classify_c(64, 16) == 4);
    CHECK(classify_c(1, 16) == 8);
    CHECK(classify_c(16, 16) == 8);
    CHECK(classify_c(-3, 16) == 1);   // signs are absorbed
    CHECK(classify_c(1, 32) == 16);
    CHECK_THROWS_AS(classify_c(0, 16), std::invalid_argument);
    CHECK_THROWS_AS(classify_c(3, 4), std::invalid_argument);
}

TEST_CASE("generators for d=3 match the worked example") {
    GeneratorSet g = generators(CurveSpec::two_pow_plus_one(3, 3));
    CHECK(g.twist_class == 1);

    // gamma: I at (1,3), J at (2,1), -J at (3,4), I at (4,2)  [1-indexed]
    MonoMatrix expect(8);
    expect.set_block_scalar(0, 2, CycMono::one());
    expect.set_block_j(1, 0, false);
    expect.set_block_j(2, 3, true);
    expect.set_block_scalar(3, 1, CycMono::one());
    CHECK(mat_equal(g.gamma, expect));

    // gamma_c phases (zeta^-3, zeta^-1, zeta, zeta^3) as conjugate pairs
    for (int j = 0; j < 4; ++j) {
        long long e = 2 * j + 1 - 4;
        CHECK(mono_equal(g.gamma_c.at(2 * j, 2 * j), CycMono::zeta(e, 16)));
        CHECK(mono_equal(g.gamma_c.at(2 * j + 1, 2 * j + 1), CycMono::zeta(-e, 16)));
    }
}

TEST_CASE("generators for d=1 and d=4") {
    GeneratorSet e = generators(CurveSpec::two_pow_plus_one(1, 5));
    CHECK(e.gamma.is_identity());
    CHECK(e.gamma_c.is_identity());
    CHECK(mat_equal(e.gamma_j, symplectic_form(1)));

    // d=4 block pattern: I at (1,3),(2,8),(4,2),(5,7),(7,1),(8,6),
    // J at (3,4), -J at (6,5)
    GeneratorSet g = generators(CurveSpec::two_pow_plus_one(4, 3));
    MonoMatrix expect(16);
    expect.set_block_scalar(0, 2, CycMono::one());
    expect.set_block_scalar(1, 7, CycMono::one());
    expect.set_block_j(2, 3, false);
    expect.set_block_scalar(3, 1, CycMono::one());
    expect.set_block_scalar(4, 6, CycMono::one());
    expect.set_block_j(5, 4, true);
    expect.set_block_scalar(6, 0, CycMono::one());
    expect.set_block_scalar(7, 5, CycMono::one());
    CHECK(mat_equal(g.gamma, expect));
}

TEST_CASE("generators sit in USp and normalize the torus") {
    std::vector<CurveSpec> specs = {
        CurveSpec::two_pow_plus_one(1, 1), CurveSpec::two_pow_plus_one(2, 3),
        CurveSpec::two_pow_plus_one(3, 3), CurveSpec::two_pow_plus_one(3, 1),
        CurveSpec::two_pow_plus_one(4, 2), CurveSpec::pow_two(3, 3),
        CurveSpec::pow_two(4, 1),          CurveSpec::pow_two(4, 5),
        CurveSpec::pow_two(5, 1)};
    for (const CurveSpec& s : specs) {
        CAPTURE(s.model());
        GeneratorSet g = generators(s);
        TorusDescriptor desc = identity_descriptor(s);
        for (const MonoMatrix* m : {&g.gamma, &g.gamma_j, &g.gamma_c}) {
            CHECK(check_usp_membership(*m));
            CHECK(normalizes_torus(*m, desc));
        }
    }

    // a scalar block zeta_8 I2 is unitary but not symplectic
    MonoMatrix scalar(2);
    scalar.set_block_scalar(0, 0, CycMono::zeta(1, 8));
    CHECK_FALSE(check_usp_membership(scalar));
}

TEST_CASE("coset equality") {
    CurveSpec s = CurveSpec::two_pow_plus_one(3, 3);
    TorusDescriptor desc = identity_descriptor(s);
    GeneratorSet g = generators(s);

    CHECK(coset_equal(g.gamma, g.gamma, desc));
    CHECK_FALSE(coset_equal(g.gamma, g.gamma_j, desc));

    // -I is a torus point (all angles at pi), so gamma_J and -gamma_J agree
    MonoMatrix minus = mat_neg(g.gamma_j);
    CHECK(coset_equal(g.gamma_j, minus, desc));

    // a block-diagonal matrix breaking the duplication pattern is not in ST^0
    MonoMatrix bad = MonoMatrix::identity(8);
    bad.set_block_pair(0, 0, CycMono::zeta(1, 16));  // angle 0 blocks disagree
    CHECK_FALSE(is_torus_point(bad, desc));
    MonoMatrix good(8);
    good.set_block_pair(0, 0, CycMono::zeta(1, 16));
    good.set_block_pair(1, 1, CycMono::zeta(5, 16));
    good.set_block_pair(2, 2, CycMono::zeta(5, 16));
    good.set_block_pair(3, 3, CycMono::zeta(1, 16));
    CHECK(is_torus_point(good, desc));
}

TEST_CASE("component group sizes") {
    CHECK(component_group(CurveSpec::two_pow_plus_one(1, 7)).size() == 2);
    CHECK(component_group(CurveSpec::two_pow_plus_one(2, 3)).size() == 16);
    CHECK(component_group(CurveSpec::two_pow_plus_one(3, 3)).size() == 64);
    CHECK(component_group(CurveSpec::two_pow_plus_one(3, 1)).size() == 8);
    CHECK(component_group(CurveSpec::pow_two(4, 3)).size() == 64);
    CHECK(component_group(CurveSpec::pow_two(4, 1)).size() == 8);

    // closed under multiplication modulo the torus
    CurveSpec s = CurveSpec::two_pow_plus_one(2, 3);
    TorusDescriptor desc = identity_descriptor(s);
    CosetList cl = component_group(s);
    for (size_t i = 0; i < cl.size(); i += 3)
        for (size_t j = 0; j < cl.size(); j += 5) {
            MonoMatrix prod = mat_mul(cl.representatives[i], cl.representatives[j]);
            bool found = false;
            for (const MonoMatrix& rep : cl.representatives)
                if (coset_equal(prod, rep, desc)) { found = true; break; }
            CHECK(found);
        }

    // size formula: 2 * 2^{d-1} * ord(zeta^{2a}) for the twist class a
    for (int d : {2, 3, 4}) {
        for (long long c : {3LL, 2LL, 4LL, 1LL}) {
            CurveSpec spec = CurveSpec::two_pow_plus_one(d, c);
            long long n = 1LL << (d + 1);
            long long a = classify_c(c, n);
            long long ord = n / std::gcd(n, 2 * a);
            CHECK(component_group(spec).size() == size_t((1LL << d) * ord));
        }
    }
}
