#include "tofh/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace tofh {

LatticeVector LatticeVector::from_ints(const std::array<long, 8>& v) {
    LatticeVector r;
    for (int i = 0; i < 8; ++i) r.twice[i] = 2 * v[i];
    return r;
}

LatticeVector operator-(const LatticeVector& v) {
    LatticeVector r;
    for (int i = 0; i < 8; ++i) r.twice[i] = -v.twice[i];
    return r;
}

mpq_class inner(const LatticeVector& u, const LatticeVector& v) {
    long s = 0;
    for (int i = 0; i < 8; ++i) s += u.twice[i] * v.twice[i];
    mpq_class q(s, 4);
    q.canonicalize();
    return q;
}

std::string to_string(const LatticeVector& v) {
    std::string s = "(";
    for (int i = 0; i < 8; ++i) {
        if (i) s += ",";
        if (v.twice[i] % 2 == 0)
            s += std::to_string(v.twice[i] / 2);
        else
            s += std::to_string(v.twice[i]) + "/2";
    }
    return s + ")";
}

bool e8_member(const LatticeVector& v) {
    bool odd = (v.twice[0] & 1) != 0;
    long sum = 0;
    for (long t : v.twice) {
        if (((t & 1) != 0) != odd) return false;
        sum += t;
    }
    // coordinate sum is sum/2, which must be an even integer
    return sum % 4 == 0;
}

std::vector<LatticeVector> e8_roots() {
    std::vector<LatticeVector> roots;
    // integer type: two entries of +-1
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            for (int si : {-1, 1})
                for (int sj : {-1, 1}) {
                    LatticeVector v;
                    v.twice[i] = 2 * si;
                    v.twice[j] = 2 * sj;
                    roots.push_back(v);
                }
    // half-integer type: all +-1/2 with an even number of minus signs
    for (int mask = 0; mask < 256; ++mask) {
        if (__builtin_popcount(mask) % 2) continue;
        LatticeVector v;
        for (int i = 0; i < 8; ++i) v.twice[i] = (mask >> i & 1) ? -1 : 1;
        roots.push_back(v);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

const std::array<LatticeVector, 8>& simple_roots() {
    static const std::array<LatticeVector, 8> roots = [] {
        // doubled entries of the printed 8x8 matrix, row-major
        static const long m[8][8] = {
            {2, 0, 0, 0, 0, 0, 0, -1},  {-2, 2, 0, 0, 0, 0, 0, -1}, {0, -2, 2, 0, 0, 0, 0, -1},
            {0, 0, -2, 2, 0, 0, 0, -1}, {0, 0, 0, -2, 2, 0, 0, -1}, {0, 0, 0, 0, -2, 2, 2, -1},
            {0, 0, 0, 0, 0, -2, 2, -1}, {0, 0, 0, 0, 0, 0, 0, -1},
        };
        std::array<LatticeVector, 8> cols;
        for (int c = 0; c < 8; ++c)
            for (int r = 0; r < 8; ++r) cols[c].twice[r] = m[r][c];
        return cols;
    }();
    return roots;
}

std::vector<mpq_class> basis_coordinates(const std::array<LatticeVector, 8>& basis, const LatticeVector& v) {
    // augmented system B c = v, B has the basis vectors as columns
    std::vector<std::vector<mpq_class>> a(8, std::vector<mpq_class>(9));
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) a[r][c] = basis[c].coord(r);
        a[r][8] = v.coord(r);
    }
    for (int c = 0; c < 8; ++c) {
        int p = c;
        while (p < 8 && a[p][c] == 0) ++p;
        if (p == 8) throw std::invalid_argument("basis_coordinates: basis is linearly dependent");
        std::swap(a[c], a[p]);
        mpq_class inv = 1 / a[c][c];
        for (int k = c; k < 9; ++k) a[c][k] *= inv;
        for (int r = 0; r < 8; ++r) {
            if (r == c || a[r][c] == 0) continue;
            mpq_class f = a[r][c];
            for (int k = c; k < 9; ++k) a[r][k] -= f * a[c][k];
        }
    }
    std::vector<mpq_class> out(8);
    for (int r = 0; r < 8; ++r) out[r] = a[r][8];
    return out;
}

std::vector<LatticeVector> positive_roots(const std::array<LatticeVector, 8>& basis) {
    std::vector<LatticeVector> pos;
    for (const auto& r : e8_roots()) {
        auto c = basis_coordinates(basis, r);
        if (std::all_of(c.begin(), c.end(), [](const mpq_class& x) { return x >= 0; })) pos.push_back(r);
    }
    return pos;
}

GateMatrix householder(const LatticeVector& alpha) {
    long norm = 0;
    for (long t : alpha.twice) norm += t * t;
    if (norm == 0) throw std::invalid_argument("householder: zero vector");
    GateMatrix h(8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            mpq_class e(-2 * alpha.twice[i] * alpha.twice[j], norm);
            e.canonicalize();
            if (i == j) e += 1;
            h.at(i, j) = from_rational(e);
        }
    return h;
}

std::optional<LatticeVector> apply(const GateMatrix& m, const LatticeVector& v) {
    if (m.dim() != 8) throw std::invalid_argument("apply: matrix must be 8x8");
    LatticeVector out;
    for (int i = 0; i < 8; ++i) {
        mpq_class s = 0;
        for (int j = 0; j < 8; ++j) {
            if (m.at(i, j).is_zero() || v.twice[j] == 0) continue;
            if (!in_dyadic(m.at(i, j))) return std::nullopt;
            s += to_rational(m.at(i, j)) * v.coord(j);
        }
        mpq_class d = 2 * s;
        d.canonicalize();
        if (d.get_den() != 1 || !d.get_num().fits_slong_p()) return std::nullopt;
        out.twice[i] = d.get_num().get_si();
    }
    return out;
}

}  // namespace tofh
