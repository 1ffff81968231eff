#include "doctest.h"
#include "support.hpp"

#include "tofh/equivalence.hpp"
#include "tofh/schemas.hpp"

#include <set>

using namespace tofh;

namespace {

std::vector<GateMatrix> mats(const std::vector<std::string>& names) {
    std::vector<GateMatrix> out;
    for (const auto& n : names) out.push_back(gate_matrix(n));
    return out;
}

// plain closure with exact keys, no packing
std::size_t closure_order(const std::vector<GateMatrix>& gens) {
    std::set<std::string> seen = {matrix_key(GateMatrix::identity(8))};
    std::vector<GateMatrix> frontier = {GateMatrix::identity(8)};
    while (!frontier.empty()) {
        std::vector<GateMatrix> next;
        for (const auto& m : frontier)
            for (const auto& g : gens) {
                GateMatrix p = mat_mul(m, g);
                if (seen.insert(matrix_key(p)).second) next.push_back(p);
            }
        frontier = std::move(next);
    }
    return seen.size();
}

}  // namespace

TEST_CASE("normalize_h examples") {
    auto a = normalize_h(parse_word("H2 H2"));
    CHECK(a.body.empty());
    CHECK(a.h_exp == 0);

    auto b = normalize_h(parse_word("H2 CCZ"));
    CHECK(b.body == parse_word("CCX01"));
    CHECK(b.h_exp == 1);

    auto c = normalize_h(parse_word("X0"));
    CHECK(c.body == parse_word("X0"));
    CHECK(c.h_exp == 0);
}

TEST_CASE("pushing table covers sigma_1") {
    GateMatrix h = gate_matrix("H2");
    for (const auto& g : sigma_1()) {
        const Word& p = h_conjugate(g);
        for (const auto& s : p) CHECK(s != "H2");
        CHECK_MESSAGE(word_matrix(p) == mat_mul(mat_mul(h, gate_matrix(g)), h), g);
        CHECK(word_matrix(basic_expansion(g)) == gate_matrix(g));
    }
    CHECK_THROWS(h_conjugate("H2"));
    CHECK_THROWS(h_conjugate("TLX[0,1]"));
}

TEST_CASE("circuits_equal examples") {
    auto v = circuits_equal(parse_word("H2 CCX12"), parse_word("K01 K12 CCZ K12 K01 H2"));
    CHECK(v.equal);
    CHECK(v.h_exp == 1);

    auto u = circuits_equal({}, parse_word("X0"));
    CHECK_FALSE(u.equal);
    REQUIRE(u.witness_column);
    CHECK(*u.witness_column == 0);

    std::mt19937 rng(3);
    for (int t = 0; t < 50; ++t) {
        Word w = testing::random_word(rng, sigma_2(), 20);
        CHECK(circuits_equal(w, recombine(normalize_h(w))).equal);
    }
}

TEST_CASE("circuits_equal behaves as an equivalence") {
    std::mt19937 rng(5);
    std::vector<std::string> small = {"X0", "H2", "CCZ", "K12", "CX01"};
    for (int t = 0; t < 40; ++t) {
        Word a = testing::random_word(rng, small, 6), b = testing::random_word(rng, small, 6),
             c = testing::random_word(rng, small, 6);
        CHECK(circuits_equal(a, a).equal);
        CHECK(circuits_equal(a, b).equal == circuits_equal(b, a).equal);
        if (circuits_equal(a, b).equal && circuits_equal(b, c).equal) CHECK(circuits_equal(a, c).equal);
    }
}

TEST_CASE("toffoli_report examples") {
    auto e = toffoli_report({});
    CHECK(e.count == 0);
    CHECK(e.within_bound);
    auto many = toffoli_report(Word(121, "CCX01"));
    CHECK(many.count == 121);
    CHECK_FALSE(many.within_bound);
    auto r3 = toffoli_report(coxeter_circuit(3));
    CHECK(r3.count == 1);
    CHECK(r3.within_bound);
}

TEST_CASE("published witness matrices") {
    GateMatrix N = witness_N(), L = witness_L();
    for (const char* g : {"CX01", "CCX12", "K12", "CCZ"}) CHECK_MESSAGE(commutes(N, gate_matrix(g)), g);
    CHECK_FALSE(commutes(N, gate_matrix("X0")));
    for (const char* g : {"X0", "CCX12", "TLK[0,1,2,3]"}) CHECK_MESSAGE(commutes(L, gate_matrix(g)), g);
    CHECK_FALSE(commutes(L, gate_matrix("CX01")));
}

TEST_CASE("minimality_witness") {
    auto check = [](const std::vector<std::string>& sub, const std::vector<std::string>& full) {
        auto w = minimality_witness(mats(sub), mats(full));
        REQUIRE(w.has_value());
        for (const auto& s : sub) CHECK(commutes(*w, gate_matrix(s)));
        bool breaks = false;
        for (const auto& f : full) breaks = breaks || !commutes(*w, gate_matrix(f));
        CHECK(breaks);
    };
    check({"CX01", "CCX12", "K12"}, sigma_0());
    check({"X0", "CCX12", "TLK[0,1,2,3]"}, sigma_K());
    CHECK_FALSE(minimality_witness(mats(sigma_0()), mats(sigma_0())));
}

TEST_CASE("finite_subgroup_probe") {
    CHECK(finite_subgroup_probe(mats({"X0"}), 100).order == 2);
    auto gens = mats({"X0", "SW01", "SW12"});
    auto r = finite_subgroup_probe(gens, 1000);
    CHECK_FALSE(r.exceeded_cap);
    CHECK(r.order == closure_order(gens));
    CHECK(r.order == 48);

    auto small = finite_subgroup_probe(mats({"H2", "CCX01"}), 50);
    auto big = finite_subgroup_probe(mats({"H2", "CCX01"}), 100000);
    CHECK(small.exceeded_cap == (big.exceeded_cap || big.order > 50));
    if (!big.exceeded_cap) CHECK(big.order == closure_order(mats({"H2", "CCX01"})));
}
