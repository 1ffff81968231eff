#include "doctest.h"
#include "support.hpp"

#include "tofh/lattice.hpp"
#include "tofh/matrix.hpp"
#include "tofh/ring.hpp"

#include <random>

using namespace tofh;
using testing::Hm;
using testing::I2;
using testing::Xm;
using testing::Zm;

namespace {

// repeated application of (2m, s) -> (m, s - 2) while s >= 2
RingElem reduce_by_rule(mpz_class n, unsigned s) {
    if (n == 0) return RingElem{};
    while (s >= 2 && n % 2 == 0) {
        n /= 2;
        s -= 2;
    }
    return RingElem(n, s);
}

}  // namespace

TEST_CASE("canonicalize examples") {
    CHECK(canonicalize(RingElem(2, 2)) == RingElem(1, 0));
    CHECK(canonicalize(RingElem(0, 5)) == RingElem(0, 0));
    // the reduction rule stops at sde 1: 4/sqrt(2)^3 = sqrt(2)
    CHECK(canonicalize(RingElem(4, 3)) == reduce_by_rule(4, 3));
    CHECK(canonicalize(RingElem(4, 3)) == RingElem(2, 1));
}

TEST_CASE("canonicalize agrees with the reduction rule") {
    for (long n = -40; n <= 40; ++n)
        for (unsigned s = 0; s < 9; ++s) {
            RingElem c = canonicalize(RingElem(n, s));
            CHECK(c == reduce_by_rule(n, s));
            CHECK(canonicalize(c) == c);
        }
}

TEST_CASE("ring arithmetic examples") {
    CHECK(ring_mul(RingElem(1, 1), RingElem(1, 1)) == RingElem(1, 2));
    CHECK(ring_add(RingElem(1, 0), RingElem(-1, 0)) == RingElem(0, 0));
    RingElem two_over_root2 = ring_add(RingElem(1, 1), RingElem(1, 1));
    CHECK(two_over_root2 == RingElem(2, 1));
    // squared values agree with rational arithmetic
    CHECK(squared_value(two_over_root2) == mpq_class(2));
    CHECK(to_string(RingElem(3, 4)) == "3/r2^4");
}

TEST_CASE("dyadic membership is sde parity") {
    CHECK(in_dyadic(dyadic(3, 2)));
    CHECK(to_rational(dyadic(3, 2)) == mpq_class(3, 4));
    CHECK_FALSE(in_dyadic(RingElem(1, 1)));
    CHECK_THROWS(to_rational(RingElem(1, 1)));
    CHECK(from_rational(mpq_class(5, 8)) == dyadic(5, 3));
    CHECK_THROWS(from_rational(mpq_class(1, 3)));
}

TEST_CASE("mixed parity sums are rejected") { CHECK_THROWS_AS(ring_add(RingElem(1, 0), RingElem(1, 1)), std::domain_error); }

TEST_CASE("2x2 matrix identities") {
    CHECK(mat_mul(Hm(), Hm()) == I2());
    CHECK(mat_kron(I2(), I2()) == GateMatrix::identity(4));
    CHECK(mat_mul(Xm(), Zm()) == mat_neg(mat_mul(Zm(), Xm())));
    CHECK(mat_mul(Xm(), Zm()) == testing::m2(0, -1, 1, 0));
    CHECK_THROWS(mat_mul(I2(), GateMatrix::identity(4)));
}

TEST_CASE("orthogonality") {
    CHECK(is_orthogonal(GateMatrix::identity(8)));
    CHECK(is_orthogonal(Hm()));
    std::vector<long> d(64, 0);
    for (int i = 0; i < 8; ++i) d[i * 9] = 1;
    d[0] = 2;
    CHECK_FALSE(is_orthogonal(GateMatrix::from_ints(8, d)));
}

TEST_CASE("sde classes") {
    CHECK(sde_class(gate_matrix("X0")) == SdeClass::DyadicOrthogonal);
    CHECK(sde_class(gate_matrix("H2")) == SdeClass::RootTwoResidue);
    CHECK(sde_class(gate_matrix("K12")) == SdeClass::DyadicOrthogonal);
    CHECK(max_sde(gate_matrix("K12")) == 2);
}

TEST_CASE("commutant basis") {
    CHECK(commutant_basis({GateMatrix::identity(8)}).size() == 64);

    std::vector<GateMatrix> S = {gate_matrix("CX01"), gate_matrix("CCX12"), gate_matrix("K12")};
    auto basis = commutant_basis(S);
    REQUIRE_FALSE(basis.empty());
    for (const auto& b : basis)
        for (const auto& a : S) CHECK(commutes(b, a));

    // every sigma_0 element commutes with everything in the commutant of all of sigma_0
    std::vector<GateMatrix> all = S;
    all.push_back(gate_matrix("X0"));
    for (const auto& b : commutant_basis(all))
        for (const auto& a : all) CHECK(commutes(b, a));
}

TEST_CASE("commutant of a single involution has the expected dimension") {
    // X0 swaps two blocks of size 4: the commutant has dimension 4*4 + 4*4 = 32
    CHECK(commutant_basis({gate_matrix("X0")}).size() == 32);
    // CCZ is diagonal with eigenvalue multiplicities 7 and 1
    CHECK(commutant_basis({gate_matrix("CCZ")}).size() == 7 * 7 + 1);
}

TEST_CASE("packed matrices round trip") {
    for (const char* g : {"X0", "H2", "K12", "CCZ", "TLK[0,1,2,3]"}) {
        GateMatrix m = gate_matrix(g);
        CHECK(unpack(pack(m)) == m);
        CHECK(unpack(packed_mul(pack(m), pack(m))) == GateMatrix::identity(8));
        CHECK(unpack(packed_transpose(pack(m))) == mat_transpose(m));
    }
    GateMatrix a = gate_matrix("H2"), b = gate_matrix("K01");
    CHECK(unpack(packed_mul(pack(a), pack(b))) == mat_mul(a, b));
}

TEST_CASE("lattice membership") {
    CHECK(e8_member(LatticeVector::from_ints({1, 1, 0, 0, 0, 0, 0, 0})));
    CHECK(e8_member(LatticeVector::from_doubled({1, 1, 1, 1, 1, 1, 1, 1})));
    CHECK_FALSE(e8_member(LatticeVector::from_ints({1, 0, 0, 0, 0, 0, 0, 0})));
    CHECK_FALSE(e8_member(LatticeVector::from_doubled({1, 1, 1, 1, 1, 1, 1, 2})));
}

TEST_CASE("roots by brute force") {
    // integer vectors with entries in {-1,0,1}, two nonzero; half-integer sign
    // patterns with an even number of minus signs
    std::size_t integer = 0, half = 0;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j) integer += 4;
    for (int mask = 0; mask < 256; ++mask)
        if (__builtin_popcount(mask) % 2 == 0) ++half;
    CHECK(integer == 112);
    CHECK(half == 128);
    auto roots = e8_roots();
    CHECK(roots.size() == integer + half);
    for (const auto& r : roots) {
        CHECK(e8_member(r));
        CHECK(inner(r, r) == 2);
    }
}

TEST_CASE("positive roots") {
    const auto& simple = simple_roots();
    auto pos = positive_roots(simple);
    CHECK(pos.size() == 120);
    for (const auto& s : simple) CHECK(std::find(pos.begin(), pos.end(), s) != pos.end());
    std::array<LatticeVector, 8> singular = simple;
    singular[7] = singular[0];
    CHECK_THROWS(positive_roots(singular));
}

TEST_CASE("householder reflections") {
    GateMatrix e1 = householder(LatticeVector::from_ints({1, 0, 0, 0, 0, 0, 0, 0}));
    std::vector<long> d(64, 0);
    for (int i = 0; i < 8; ++i) d[i * 9] = 1;
    d[0] = -1;
    CHECK(e1 == GateMatrix::from_ints(8, d));
    auto all_half = LatticeVector::from_doubled({-1, -1, -1, -1, -1, -1, -1, -1});
    CHECK(householder(all_half) == coxeter_generator(8));
    CHECK(mat_mul(coxeter_generator(8), coxeter_generator(8)) == GateMatrix::identity(8));
    for (const auto& r : e8_roots()) {
        CHECK(householder(r) == householder(-r));
        if (r.twice[0] != 0) break;
    }
    CHECK_THROWS(householder(LatticeVector{}));
}
