#include "tofh/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tofh {

GateMatrix GateMatrix::identity(std::size_t dim) {
    GateMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = RingElem(1);
    return m;
}

GateMatrix GateMatrix::from_ints(std::size_t dim, const std::vector<long>& rowmajor, unsigned sde) {
    if (rowmajor.size() != dim * dim) throw std::invalid_argument("from_ints: wrong entry count");
    GateMatrix m(dim);
    for (std::size_t i = 0; i < dim * dim; ++i)
        m.e_[i] = canonicalize(RingElem(mpz_class(rowmajor[i]), sde));
    return m;
}

static void check_same_dim(const GateMatrix& a, const GateMatrix& b, const char* op) {
    if (a.dim() != b.dim())
        throw std::invalid_argument(std::string(op) + ": dimension mismatch " + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()));
}

GateMatrix mat_mul(const GateMatrix& a, const GateMatrix& b) {
    check_same_dim(a, b, "mat_mul");
    const std::size_t n = a.dim();
    GateMatrix c(n);
    std::vector<std::pair<const RingElem*, const RingElem*>> terms;
    mpz_class acc, t;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            terms.clear();
            unsigned top = 0;
            for (std::size_t k = 0; k < n; ++k) {
                const RingElem& x = a.at(i, k);
                const RingElem& y = b.at(k, j);
                if (x.is_zero() || y.is_zero()) continue;
                terms.emplace_back(&x, &y);
                top = std::max(top, x.sde + y.sde);
            }
            if (terms.empty()) continue;
            acc = 0;
            for (auto [x, y] : terms) {
                unsigned s = x->sde + y->sde;
                if ((top - s) & 1u)
                    throw std::domain_error("mat_mul: entry (" + std::to_string(i) + "," + std::to_string(j) +
                                            ") mixes sqrt(2) parity");
                t = x->numer * y->numer;
                mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), (top - s) / 2);
                acc += t;
            }
            c.at(i, j) = canonicalize(RingElem(acc, top));
        }
    }
    return c;
}

GateMatrix mat_kron(const GateMatrix& a, const GateMatrix& b) {
    const std::size_t n = a.dim(), m = b.dim();
    GateMatrix c(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l)
                    c.at(i * m + k, j * m + l) = ring_mul(a.at(i, j), b.at(k, l));
    return c;
}

bool mat_eq(const GateMatrix& a, const GateMatrix& b) {
    check_same_dim(a, b, "mat_eq");
    return a == b;
}

GateMatrix mat_transpose(const GateMatrix& a) {
    GateMatrix t(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) t.at(j, i) = a.at(i, j);
    return t;
}

GateMatrix mat_neg(const GateMatrix& a) {
    GateMatrix r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) r.at(i, j) = ring_neg(a.at(i, j));
    return r;
}

GateMatrix mat_add(const GateMatrix& a, const GateMatrix& b) {
    check_same_dim(a, b, "mat_add");
    GateMatrix r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) r.at(i, j) = ring_add(a.at(i, j), b.at(i, j));
    return r;
}

GateMatrix mat_scale(const GateMatrix& a, const RingElem& s) {
    GateMatrix r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) r.at(i, j) = ring_mul(a.at(i, j), s);
    return r;
}

bool commutes(const GateMatrix& a, const GateMatrix& b) { return mat_mul(a, b) == mat_mul(b, a); }

bool is_orthogonal(const GateMatrix& a) {
    return mat_mul(mat_transpose(a), a) == GateMatrix::identity(a.dim());
}

SdeClass sde_class(const GateMatrix& a) {
    for (const auto& e : a.entries())
        if (!in_dyadic(e)) return SdeClass::RootTwoResidue;
    return SdeClass::DyadicOrthogonal;
}

const char* sde_class_name(SdeClass c) {
    return c == SdeClass::DyadicOrthogonal ? "DyadicOrthogonal" : "RootTwoResidue";
}

unsigned max_sde(const GateMatrix& a) {
    unsigned k = 0;
    for (const auto& e : a.entries()) k = std::max(k, e.sde);
    return k;
}

std::string to_string(const GateMatrix& a) {
    std::ostringstream os;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        os << "[";
        for (std::size_t j = 0; j < a.dim(); ++j) {
            if (j) os << " ";
            os << to_string(a.at(i, j));
        }
        os << "]\n";
    }
    return os.str();
}

std::string matrix_key(const GateMatrix& a) {
    std::string key = std::to_string(a.dim());
    for (const auto& e : a.entries()) {
        key += ';';
        key += e.numer.get_str(16);
        key += '/';
        key += std::to_string(e.sde);
    }
    return key;
}

namespace {

// Split an entry n/sqrt(2)^s into its rational part p and the rational
// coefficient q of sqrt(2): value = p + q*sqrt(2).
void split_entry(const RingElem& e, mpq_class& p, mpq_class& q) {
    p = 0;
    q = 0;
    if (e.is_zero()) return;
    mpz_class den;
    if (e.sde % 2 == 0) {
        mpz_ui_pow_ui(den.get_mpz_t(), 2, e.sde / 2);
        p = mpq_class(e.numer, den);
        p.canonicalize();
    } else {
        mpz_ui_pow_ui(den.get_mpz_t(), 2, (e.sde + 1) / 2);
        q = mpq_class(e.numer, den);
        q.canonicalize();
    }
}

}  // namespace

std::vector<GateMatrix> commutant_basis(const std::vector<GateMatrix>& S) {
    if (S.empty()) throw std::invalid_argument("commutant_basis: empty generator list");
    const std::size_t d = S.front().dim();
    for (const auto& A : S)
        if (A.dim() != d) throw std::invalid_argument("commutant_basis: mixed dimensions");
    const std::size_t nv = d * d;

    std::vector<std::vector<mpq_class>> rows;
    for (const auto& A : S) {
        std::vector<mpq_class> P(nv), Q(nv);
        for (std::size_t i = 0; i < nv; ++i) split_entry(A.entries()[i], P[i], Q[i]);
        for (const auto* part : {&P, &Q}) {
            bool any = std::any_of(part->begin(), part->end(), [](const mpq_class& x) { return x != 0; });
            if (!any) continue;
            // (M A - A M)_{ij} = sum_k M_ik A_kj - A_ik M_kj
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) {
                    std::vector<mpq_class> row(nv);
                    for (std::size_t k = 0; k < d; ++k) {
                        row[i * d + k] += (*part)[k * d + j];
                        row[k * d + j] -= (*part)[i * d + k];
                    }
                    if (std::any_of(row.begin(), row.end(), [](const mpq_class& x) { return x != 0; }))
                        rows.push_back(std::move(row));
                }
            }
        }
    }

    // reduced row echelon form
    std::vector<int> pivot_of_col(nv, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < nv && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        mpq_class inv = 1 / rows[r][c];
        for (std::size_t k = c; k < nv; ++k) rows[r][k] *= inv;
        for (std::size_t q = 0; q < rows.size(); ++q) {
            if (q == r || rows[q][c] == 0) continue;
            mpq_class f = rows[q][c];
            for (std::size_t k = c; k < nv; ++k) rows[q][k] -= f * rows[r][k];
        }
        pivot_of_col[c] = static_cast<int>(r);
        ++r;
    }

    std::vector<GateMatrix> basis;
    for (std::size_t f = 0; f < nv; ++f) {
        if (pivot_of_col[f] >= 0) continue;
        std::vector<mpq_class> x(nv);
        x[f] = 1;
        for (std::size_t c = 0; c < nv; ++c)
            if (pivot_of_col[c] >= 0) x[c] = -rows[pivot_of_col[c]][f];
        mpz_class l = 1, g = 0;
        for (const auto& v : x) {
            if (v == 0) continue;
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        }
        std::vector<mpz_class> ints(nv);
        for (std::size_t i = 0; i < nv; ++i) {
            mpq_class s = x[i] * l;
            ints[i] = s.get_num();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
        }
        GateMatrix m(d);
        for (std::size_t i = 0; i < nv; ++i) m.at(i / d, i % d) = RingElem(ints[i] / g, 0);
        basis.push_back(std::move(m));
    }
    return basis;
}

PackedMat PackedMat::identity(int dim) {
    PackedMat m;
    m.dim = dim;
    for (int i = 0; i < dim; ++i) m.a[i * kMax + i] = 1;
    return m;
}

std::size_t PackedMatHash::operator()(const PackedMat& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(m.exp * 131 + m.dim);
    for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j) {
            h ^= static_cast<std::uint64_t>(m.a[i * PackedMat::kMax + j]);
            h *= 1099511628211ull;
        }
    return static_cast<std::size_t>(h);
}

namespace {

void normalize(PackedMat& m) {
    bool zero = true;
    for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j)
            if (m.a[i * PackedMat::kMax + j] != 0) zero = false;
    if (zero) {
        m.exp = 0;
        return;
    }
    while (m.exp >= 2) {
        bool even = true;
        for (int i = 0; i < m.dim && even; ++i)
            for (int j = 0; j < m.dim; ++j)
                if (m.a[i * PackedMat::kMax + j] & 1) {
                    even = false;
                    break;
                }
        if (!even) break;
        for (int i = 0; i < m.dim; ++i)
            for (int j = 0; j < m.dim; ++j) m.a[i * PackedMat::kMax + j] /= 2;
        m.exp -= 2;
    }
}

constexpr std::int64_t kPackedLimit = std::int64_t(1) << 40;

}  // namespace

PackedMat pack(const GateMatrix& g) {
    if (g.dim() > static_cast<std::size_t>(PackedMat::kMax)) throw std::domain_error("pack: dimension above 8");
    PackedMat m;
    m.dim = static_cast<int>(g.dim());
    int parity = -1;
    unsigned top = 0;
    for (const auto& e : g.entries()) {
        if (e.is_zero()) continue;
        if (parity < 0) parity = static_cast<int>(e.sde & 1u);
        if (static_cast<int>(e.sde & 1u) != parity) throw std::domain_error("pack: mixed sqrt(2) parity");
        top = std::max(top, e.sde);
    }
    m.exp = static_cast<int>(top);
    for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j) {
            const RingElem& e = g.at(i, j);
            if (e.is_zero()) continue;
            mpz_class v;
            mpz_mul_2exp(v.get_mpz_t(), e.numer.get_mpz_t(), (top - e.sde) / 2);
            if (!v.fits_slong_p() || abs(v) >= kPackedLimit) throw std::domain_error("pack: entry too large");
            m.a[i * PackedMat::kMax + j] = v.get_si();
        }
    normalize(m);
    return m;
}

GateMatrix unpack(const PackedMat& m) {
    GateMatrix g(m.dim);
    for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j)
            g.at(i, j) = canonicalize(RingElem(mpz_class(static_cast<long>(m.a[i * PackedMat::kMax + j])),
                                               static_cast<unsigned>(m.exp)));
    return g;
}

PackedMat packed_mul(const PackedMat& x, const PackedMat& y) {
    if (x.dim != y.dim) throw std::invalid_argument("packed_mul: dimension mismatch");
    PackedMat r;
    r.dim = x.dim;
    r.exp = x.exp + y.exp;
    const int n = x.dim;
    constexpr int K = PackedMat::kMax;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            __int128 s = 0;
            for (int k = 0; k < n; ++k) s += static_cast<__int128>(x.a[i * K + k]) * y.a[k * K + j];
            if (s >= kPackedLimit || s <= -kPackedLimit) throw std::domain_error("packed_mul: overflow");
            r.a[i * K + j] = static_cast<std::int64_t>(s);
        }
    normalize(r);
    return r;
}

PackedMat packed_transpose(const PackedMat& x) {
    PackedMat t = x;
    for (int i = 0; i < x.dim; ++i)
        for (int j = 0; j < x.dim; ++j) t.a[j * PackedMat::kMax + i] = x.a[i * PackedMat::kMax + j];
    return t;
}

}  // namespace tofh
