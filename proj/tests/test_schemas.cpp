#include "doctest.h"
#include "support.hpp"

#include "tofh/schemas.hpp"

#include <map>
#include <set>
#include <unordered_map>

using namespace tofh;

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// closed-form instance counts, written out per schema
std::size_t formula(const std::string& s, std::size_t n) {
    static const std::map<std::string, int> linear = {{"Rep1", 1},   {"Perm1", 2},  {"Perm7", 2},  {"Perm5", 3},
                                                      {"Perm6", 3},  {"Rep2", 4},   {"Rep5a", 4},  {"Rep6", 4},
                                                      {"Rep7", 4},   {"Perm8", 5},  {"Perm9", 5},  {"Perm10", 5},
                                                      {"Perm11", 5}, {"Rep8", 6},   {"Rep9", 8}};
    if (auto it = linear.find(s); it != linear.end()) return binom(n, it->second);
    if (s == "ZCom1") return n * (n - 1);
    if (s == "Perm3") return binom(n, 2) * (n - 2);
    if (s == "Rep3") return binom(n, 4) * (n - 4);
    if (s == "Perm2") return binom(n, 2) * binom(n - 2, 2);
    if (s == "Perm4") return binom(n, 2) * binom(n - 2, 4);
    if (s == "KCom1") return binom(n, 4) * binom(n - 4, 4);
    throw std::invalid_argument(s);
}

// shortest, then first in table order, word w over Sigma_D with [w] = m
Word bfs_word(const GateMatrix& m, int depth) {
    std::vector<std::pair<Word, GateMatrix>> layer = {{Word{}, GateMatrix::identity(8)}};
    std::set<std::string> seen = {matrix_key(GateMatrix::identity(8))};
    if (layer[0].second == m) return {};
    for (int d = 1; d <= depth; ++d) {
        std::vector<std::pair<Word, GateMatrix>> next;
        for (const auto& [w, a] : layer)
            for (const auto& g : sigma_D()) {
                GateMatrix b = mat_mul(a, gate_matrix(g));
                if (!seen.insert(matrix_key(b)).second) continue;
                Word v = w;
                v.push_back(g);
                if (b == m) return v;
                next.emplace_back(std::move(v), std::move(b));
            }
        layer = std::move(next);
    }
    throw std::runtime_error("not found");
}

}  // namespace

TEST_CASE("instantiate examples") {
    CHECK(instantiate("ZCom1", 8).size() == 56);
    auto rep1 = instantiate("Rep1", 8);
    REQUIRE(rep1.size() == 8);
    for (const auto& r : rep1) {
        CHECK(r.lhs.size() == 2);
        CHECK(r.lhs[0] == r.lhs[1]);
        CHECK(r.rhs.empty());
    }
    CHECK(instantiate("R_E8", 8).size() == 36);
    CHECK(instantiate("R_E8D", 8).size() == 8);
    CHECK(instantiate("R0", 8).size() == 46);
    CHECK_THROWS(instantiate("R0", 6));
    CHECK_THROWS(instantiate("Rep9", 6));
    CHECK_THROWS(instantiate("NoSuchSchema", 8));
}

TEST_CASE("fixed tables keep their ids") {
    auto r0 = instantiate("R0");
    CHECK(r0[16].id == "r0.17");
    CHECK(format_relation(r0[0]) == "r0.1: CZ01 = K12 CX01 K12");
}

TEST_CASE("enumerated counts match closed forms") {
    for (std::size_t n : {6u, 7u, 8u, 9u}) {
        for (const auto& s : multilevel_schemas()) {
            if (s == "Rep9" && n < 8) continue;
            CHECK_MESSAGE(instantiate(s, n).size() == formula(s, n), s << " at n=" << n);
        }
    }
    auto rep = count_all(8);
    CHECK(rep.partial_total == 1414);
    CHECK(rep.linear_total == 709);
    CHECK(rep.total == 2123);
    std::size_t m5 = 0;
    for (const auto& row : rep.rows) {
        CHECK(row.enumerated == row.formula);
        CHECK(row.formula == formula(row.name, 8));
        if (row.linear && row.levels == 5) m5 += row.enumerated;
        if (row.name == "Rep9") CHECK(row.enumerated == 1);
    }
    CHECK(m5 == 224);
}

TEST_CASE("schema instances are distinct and sorted") {
    for (const auto& s : multilevel_schemas()) {
        auto a = instantiate(s, 8), b = instantiate(s, 8);
        CHECK(a == b);
        std::set<std::string> ids;
        for (const auto& r : a) ids.insert(r.id);
        CHECK(ids.size() == a.size());
        for (const auto& r : a)
            for (const Word* w : {&r.lhs, &r.rhs})
                for (const auto& t : *w) CHECK_MESSAGE(well_formed(symbol(t), 8), r.id << " " << t);
    }
}

TEST_CASE("every shipped table is sound") {
    for (const auto& t : builtin_tables()) {
        Presentation p = builtin_presentation(t.name);
        REQUIRE(p.interp);
        std::size_t bad = 0;
        for (const auto& r : p.relations)
            if (!relation_sound(r, *p.interp)) ++bad;
        CHECK_MESSAGE(bad == 0, t.name);
    }
}

TEST_CASE("commutator family") {
    for (auto [m, n] : std::vector<std::pair<std::string, std::string>>{
             {"CX10", "X0"}, {"CX01", "X1"}, {"CCX12", "K12"}, {"K01", "CX12"}, {"X0", "Z0"}}) {
        Relation r = commutator_family(m, n);
        CHECK(r.lhs == Word{m, n});
        REQUIRE_FALSE(r.rhs.empty());
        CHECK(r.rhs[0] == n);
        Word w(r.rhs.begin() + 1, r.rhs.end());
        GateMatrix target = word_matrix(Word{n, m, n});
        CHECK(w == bfs_word(target, 3));
    }
    CHECK(commutator_family("CX10", "X0").rhs == parse_word("X0 CX10"));
    CHECK(commutator_family("X0", "X0").rhs == parse_word("X0 X0"));
    CHECK_THROWS_AS(commutator_family("X0", "X1"), std::invalid_argument);
}

TEST_CASE("R_D families") {
    auto rd = instantiate("R_D");
    std::size_t ord = 0, sym = 0, bif = 0, com = 0;
    for (const auto& r : rd) {
        if (r.id.rfind("rd.ord.", 0) == 0) ++ord;
        if (r.id.rfind("rd.sym.", 0) == 0) ++sym;
        if (r.id.rfind("rd.bif.", 0) == 0) ++bif;
        if (r.id.rfind("rd.com.", 0) == 0) ++com;
    }
    CHECK(ord == sigma_D().size());
    CHECK(sym > 0);
    CHECK(bif > 0);
    CHECK(com > 0);
    CHECK(ord + sym + bif + com + 1 == rd.size());
}

TEST_CASE("alphabets") {
    CHECK(sigma_D().size() == 23);
    CHECK(sigma_1().size() == 25);
    CHECK(sigma_2().back() == "H2");
    CHECK(named_alphabet("Sigma_K") == sigma_K());
    CHECK_THROWS(named_alphabet("Q"));
}
