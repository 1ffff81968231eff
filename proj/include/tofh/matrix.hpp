#pragma once

#include "tofh/ring.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace tofh {

class GateMatrix {
public:
    GateMatrix() = default;
    explicit GateMatrix(std::size_t dim) : dim_(dim), e_(dim * dim) {}

    static GateMatrix identity(std::size_t dim);
    static GateMatrix from_ints(std::size_t dim, const std::vector<long>& rowmajor, unsigned sde = 0);

    std::size_t dim() const { return dim_; }
    const RingElem& at(std::size_t r, std::size_t c) const { return e_[r * dim_ + c]; }
    RingElem& at(std::size_t r, std::size_t c) { return e_[r * dim_ + c]; }
    const std::vector<RingElem>& entries() const { return e_; }

    bool operator==(const GateMatrix& o) const { return dim_ == o.dim_ && e_ == o.e_; }
    bool operator!=(const GateMatrix& o) const { return !(*this == o); }

private:
    std::size_t dim_ = 0;
    std::vector<RingElem> e_;
};

GateMatrix mat_mul(const GateMatrix& a, const GateMatrix& b);
GateMatrix mat_kron(const GateMatrix& a, const GateMatrix& b);
bool mat_eq(const GateMatrix& a, const GateMatrix& b);
GateMatrix mat_transpose(const GateMatrix& a);
GateMatrix mat_neg(const GateMatrix& a);
GateMatrix mat_add(const GateMatrix& a, const GateMatrix& b);
GateMatrix mat_scale(const GateMatrix& a, const RingElem& s);
bool commutes(const GateMatrix& a, const GateMatrix& b);

bool is_orthogonal(const GateMatrix& a);

enum class SdeClass { DyadicOrthogonal, RootTwoResidue };
SdeClass sde_class(const GateMatrix& a);
const char* sde_class_name(SdeClass c);

// Largest canonical sde over all entries.
unsigned max_sde(const GateMatrix& a);

std::string to_string(const GateMatrix& a);
// Stable byte key of the canonical entries, for hashing.
std::string matrix_key(const GateMatrix& a);

// Rational basis of {M : MA = AM for all A in S}, each element cleared to a
// primitive integer matrix. Free variables are taken in row-major order.
std::vector<GateMatrix> commutant_basis(const std::vector<GateMatrix>& S);

// Fixed-width copy of a TofH-style matrix: value = entry / sqrt(2)^exp with one
// shared exponent. Used by closure searches where mpz arithmetic is too slow.
struct PackedMat {
    static constexpr int kMax = 8;
    int dim = 0;
    int exp = 0;
    std::array<std::int64_t, kMax * kMax> a{};

    static PackedMat identity(int dim);
    bool operator==(const PackedMat& o) const { return dim == o.dim && exp == o.exp && a == o.a; }
    std::int64_t at(int r, int c) const { return a[r * kMax + c]; }
};

struct PackedMatHash {
    std::size_t operator()(const PackedMat& m) const noexcept;
};

// Throws std::domain_error if the matrix cannot be packed (mixed sqrt(2)
// parity, dimension above 8, or overflow).
PackedMat pack(const GateMatrix& m);
GateMatrix unpack(const PackedMat& m);
PackedMat packed_mul(const PackedMat& x, const PackedMat& y);
PackedMat packed_transpose(const PackedMat& x);

}  // namespace tofh
