#include "doctest.h"
#include "support.hpp"

#include "tofh/gates.hpp"
#include "tofh/lattice.hpp"

using namespace tofh;
using testing::Hm;
using testing::I2;
using testing::kron3;
using testing::Xm;
using testing::Zm;

namespace {

GateMatrix P0() { return testing::m2(1, 0, 0, 0); }
GateMatrix P1() { return testing::m2(0, 0, 0, 1); }

// single-qubit operator m on qubit q of three
GateMatrix on(int q, const GateMatrix& m) {
    return kron3(q == 0 ? m : I2(), q == 1 ? m : I2(), q == 2 ? m : I2());
}

GateMatrix controlled(int c, int t, const GateMatrix& m) {
    std::array<GateMatrix, 3> a{I2(), I2(), I2()}, b{I2(), I2(), I2()};
    a[c] = P0();
    b[c] = P1();
    b[t] = m;
    return mat_add(kron3(a[0], a[1], a[2]), kron3(b[0], b[1], b[2]));
}

}  // namespace

TEST_CASE("single qubit gates against Kronecker products") {
    for (int q = 0; q < 3; ++q) {
        CHECK(gate_matrix("X" + std::to_string(q)) == on(q, Xm()));
        CHECK(gate_matrix("Z" + std::to_string(q)) == on(q, Zm()));
        CHECK(gate_matrix("H" + std::to_string(q)) == on(q, Hm()));
    }
    CHECK(gate_matrix("K12") == mat_kron(I2(), mat_kron(Hm(), Hm())));
    CHECK(gate_matrix("K01") == mat_mul(on(0, Hm()), on(1, Hm())));
}

TEST_CASE("controlled gates against projector sums") {
    for (int c = 0; c < 3; ++c)
        for (int t = 0; t < 3; ++t) {
            if (c == t) continue;
            std::string ct = std::to_string(c) + std::to_string(t);
            CHECK(gate_matrix("CX" + ct) == controlled(c, t, Xm()));
        }
    CHECK(gate_matrix("CZ01") == controlled(0, 1, Zm()));
    CHECK(gate_matrix("CZ12") == controlled(1, 2, Zm()));
}

TEST_CASE("two-level identities") {
    CHECK(gate_matrix("CCX01") == gate_matrix("TLX[6,7]"));
    CHECK(gate_matrix("CCZ") == gate_matrix("NEG[7]"));
    GateMatrix x67 = gate_matrix("TLX[6,7]");
    for (std::size_t c = 0; c < 8; ++c) {
        std::size_t r = c == 6 ? 7 : c == 7 ? 6 : c;
        CHECK(x67.at(r, c) == RingElem(1));
    }
    CHECK(word_matrix(parse_word("X0 X1 CCX01 X1 X0")) == gate_matrix("TLX[0,1]"));
}

TEST_CASE("symbol parsing") {
    CHECK(symbol_name(symbol("TLK[0,1,2,3]")) == "TLK[0,1,2,3]");
    CHECK_THROWS(symbol("CX00"));
    CHECK_THROWS(symbol("X3"));
    CHECK_THROWS(symbol("bogus"));
    CHECK_FALSE(well_formed(symbol("TLX[2,1]"), 8));
    CHECK(well_formed(symbol("TLX[1,2]"), 8));
    CHECK_FALSE(well_formed(symbol("TLX[1,9]"), 8));
}

TEST_CASE("interpretation of words") {
    CHECK(word_matrix({}) == GateMatrix::identity(8));
    CHECK(word_matrix(parse_word("X0 X0")) == GateMatrix::identity(8));
    CHECK(word_matrix(parse_word("H2 CCZ")) == word_matrix(parse_word("CCX01 H2")));
    Interpretation i = standard_interpretation({"X0", "CX01"});
    CHECK(interp_word(i, parse_word("X0 CX01")) == mat_mul(gate_matrix("X0"), gate_matrix("CX01")));
    CHECK_THROWS(interp_word(i, parse_word("X1")));
}

TEST_CASE("every generator is orthogonal and involutory") {
    std::vector<std::string> names = {"X0", "X1", "X2", "Z0", "Z1", "Z2", "H0", "H1", "H2", "K01", "K12", "K02",
                                      "CX01", "CX10", "CX02", "CX20", "CX12", "CX21", "CZ01", "CZ02", "CZ12",
                                      "CCX01", "CCX02", "CCX12", "CCZ", "SW01", "SW02", "SW12", "NEG[3]",
                                      "TLX[2,5]", "TLK[1,3,4,6]"};
    for (const auto& n : names) {
        GateMatrix m = gate_matrix(n);
        CHECK_MESSAGE(is_orthogonal(m), n);
        CHECK_MESSAGE(mat_mul(m, m) == GateMatrix::identity(8), n);
        bool h = n[0] == 'H';
        CHECK_MESSAGE((sde_class(m) == SdeClass::DyadicOrthogonal) == !h, n);
    }
    for (int j = 1; j <= 8; ++j) CHECK(is_orthogonal(coxeter_generator(j)));
}

TEST_CASE("swap is three CNOTs") {
    CHECK(gate_matrix("SW01") == word_matrix(parse_word("CX01 CX10 CX01")));
    CHECK(gate_matrix("SW02") == word_matrix(parse_word("CX02 CX20 CX02")));
    CHECK(gate_matrix("SW12") == word_matrix(parse_word("CX12 CX21 CX12")));
    CHECK(gate_matrix("K02") == word_matrix(parse_word("K01 K12")));
}

TEST_CASE("Coxeter generators and their circuits") {
    CHECK(word_matrix(parse_word("X0 CCX01 X0")) == householder(simple_roots()[2]));
    for (int j = 1; j <= 8; ++j) {
        CHECK(word_matrix(coxeter_circuit(j)) == coxeter_generator(j));
        CHECK(coxeter_generator(j) == householder(simple_roots()[j - 1]));
        CHECK(mat_mul(coxeter_generator(j), coxeter_generator(j)) == GateMatrix::identity(8));
    }
    CHECK(coxeter_circuit(8).size() == 9);
}

TEST_CASE("Coxeter generators preserve the lattice") {
    auto roots = e8_roots();
    std::vector<LatticeVector> probe = {LatticeVector::from_ints({2, 0, 0, 0, 0, 0, 0, 0}),
                                        LatticeVector::from_ints({1, -1, 0, 0, 0, 0, 0, 0}),
                                        LatticeVector::from_doubled({1, 1, 1, 1, 1, 1, 1, 1}),
                                        LatticeVector::from_doubled({3, 1, 1, 1, 1, 1, 1, -1})};
    for (const auto& a : roots) {
        GateMatrix h = householder(a);
        for (const auto& v : probe) {
            auto img = apply(h, v);
            REQUIRE(img.has_value());
            CHECK(e8_member(*img));
        }
    }
}

TEST_CASE("construction words reach their targets") {
    auto words = construction_words();
    auto targets = construction_targets();
    for (const auto& [name, target] : targets) {
        auto it = std::find_if(words.begin(), words.end(), [&](const auto& p) { return p.first == name; });
        REQUIRE(it != words.end());
        for (const auto& s : it->second) CHECK(s[0] == 'r');
        CHECK_MESSAGE(word_matrix(it->second) == word_matrix(target), name);
    }
}

TEST_CASE("level operators are dimension generic") {
    GateMatrix k = level_operator(symbol("TLK[0,2,4,5]"), 6);
    CHECK(k.dim() == 6);
    CHECK(is_orthogonal(k));
    CHECK(permutation_matrix({1, 0, 2}) == level_operator(symbol("TLX[0,1]"), 3));
}
