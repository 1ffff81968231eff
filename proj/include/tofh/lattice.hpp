#pragma once

#include "tofh/matrix.hpp"

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace tofh {

// Coordinates are stored doubled, so an odd entry is a half-integer.
struct LatticeVector {
    std::array<long, 8> twice{};

    static LatticeVector from_ints(const std::array<long, 8>& v);
    static LatticeVector from_doubled(const std::array<long, 8>& t) { return LatticeVector{t}; }

    mpq_class coord(int i) const { return mpq_class(twice[i], 2); }
    bool operator==(const LatticeVector& o) const { return twice == o.twice; }
    bool operator<(const LatticeVector& o) const { return twice < o.twice; }
};

LatticeVector operator-(const LatticeVector& v);
// <u, v> as an exact rational
mpq_class inner(const LatticeVector& u, const LatticeVector& v);
std::string to_string(const LatticeVector& v);

bool e8_member(const LatticeVector& v);

// All 240 vectors of norm 2 in the even lattice, sorted.
std::vector<LatticeVector> e8_roots();

// Columns of the simple-root matrix, in order r1..r8.
const std::array<LatticeVector, 8>& simple_roots();

// Exact coordinates of v in the given basis; throws std::invalid_argument
// when the basis is singular.
std::vector<mpq_class> basis_coordinates(const std::array<LatticeVector, 8>& basis, const LatticeVector& v);

// Roots whose coordinates in the basis are all nonnegative.
std::vector<LatticeVector> positive_roots(const std::array<LatticeVector, 8>& basis);

// v -> v - 2<v,a>/<a,a> a. Throws on a zero vector or a non-dyadic result.
GateMatrix householder(const LatticeVector& alpha);

// M v, or nullopt when the image leaves the half-integer grid.
std::optional<LatticeVector> apply(const GateMatrix& m, const LatticeVector& v);

}  // namespace tofh
