#include "tofh/schemas.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace tofh {

const std::vector<std::string>& sigma_D() {
    static const std::vector<std::string> s = {"X0",   "X1",   "X2",   "CX01",  "CX02",  "CX10",  "CX12",  "CX20",
                                               "CX21", "CCX01", "CCX02", "CCX12", "Z0",    "Z1",    "Z2",    "CZ01",
                                               "CZ02", "CZ12",  "K01",   "K12",   "SW01",  "SW02",  "SW12"};
    return s;
}

const std::vector<std::string>& sigma_0() {
    static const std::vector<std::string> s = {"X0", "CX01", "CCX12", "K12"};
    return s;
}

const std::vector<std::string>& sigma_1() {
    static const std::vector<std::string> s = [] {
        auto v = sigma_D();
        v.push_back("CCZ");
        v.push_back("TLK[0,1,2,3]");
        return v;
    }();
    return s;
}

const std::vector<std::string>& sigma_2() {
    static const std::vector<std::string> s = [] {
        auto v = sigma_1();
        v.push_back("H2");
        return v;
    }();
    return s;
}

const std::vector<std::string>& sigma_K() {
    static const std::vector<std::string> s = {"X0", "CX01", "CCX12", "TLK[0,1,2,3]"};
    return s;
}

const std::vector<std::string>& sigma_Z() {
    static const std::vector<std::string> s = {"X0", "CX01", "CCX12", "K12", "CCZ"};
    return s;
}

const std::vector<std::string>& named_alphabet(const std::string& name) {
    std::string k = name;
    for (const char* pre : {"Sigma_", "sigma_", "Sigma", "sigma"})
        if (k.rfind(pre, 0) == 0) {
            k = k.substr(std::string(pre).size());
            break;
        }
    if (k == "D") return sigma_D();
    if (k == "0") return sigma_0();
    if (k == "1") return sigma_1();
    if (k == "2") return sigma_2();
    if (k == "K") return sigma_K();
    if (k == "Z") return sigma_Z();
    throw std::invalid_argument("unknown alphabet '" + name + "'");
}

namespace {

std::string X(int a, int b) { return "TLX[" + std::to_string(a) + "," + std::to_string(b) + "]"; }
std::string N(int a) { return "NEG[" + std::to_string(a) + "]"; }
std::string K(int a, int b, int c, int d) {
    return "TLK[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," + std::to_string(d) + "]";
}

std::string join(std::initializer_list<std::string> parts) {
    std::string s;
    for (const auto& p : parts) {
        if (p.empty()) continue;
        if (!s.empty()) s += ' ';
        s += p;
    }
    return s;
}

std::string params_id(const std::string& name, const std::vector<int>& p) {
    std::string s = name + "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p[i]);
    }
    return s + "]";
}

Relation rel(std::string id, const std::string& lhs, const std::string& rhs) {
    return Relation{std::move(id), parse_word(lhs), parse_word(rhs)};
}

// Linear schemas: the body receives the increasing tuple and maps it to the
// schema's letters itself.
struct LinearSchema {
    const char* name;
    int m;
    std::function<std::pair<std::string, std::string>(const std::vector<int>&)> body;
    // permutation from increasing tuple positions to letter order a, b, c, ...
    std::vector<int> letters;
};

std::string rho(int a, int b, int c, int d, int e, int f, int g, int h) {
    return join({K(e, f, g, h), K(a, b, c, d), X(d, e), K(a, b, c, d), K(e, f, g, h)});
}

const std::vector<LinearSchema>& linear_schemas() {
    using V = std::vector<int>;
    static const std::vector<LinearSchema> s = {
        {"Rep1", 1, [](const V& p) { return std::make_pair(join({N(p[0]), N(p[0])}), std::string(".")); }, {0}},
        {"Perm1", 2, [](const V& p) { return std::make_pair(join({X(p[0], p[1]), X(p[0], p[1])}), std::string(".")); }, {0, 1}},
        {"Perm7", 2,
         [](const V& p) {
             int a = p[0], b = p[1];
             return std::make_pair(join({X(a, b), N(a)}), join({N(b), X(a, b)}));
         },
         {0, 1}},
        // a < c < b
        {"Perm5", 3,
         [](const V& p) {
             int a = p[0], c = p[1], b = p[2];
             return std::make_pair(join({X(a, c), X(a, b)}), join({X(c, b), X(a, c)}));
         },
         {0, 2, 1}},
        {"Perm6", 3,
         [](const V& p) {
             int a = p[0], b = p[1], c = p[2];
             return std::make_pair(join({X(b, c), X(a, b)}), join({X(a, c), X(b, c)}));
         },
         {0, 1, 2}},
        {"Rep2", 4,
         [](const V& p) {
             return std::make_pair(join({K(p[0], p[1], p[2], p[3]), K(p[0], p[1], p[2], p[3])}), std::string("."));
         },
         {0, 1, 2, 3}},
        {"Rep5a", 4,
         [](const V& p) {
             int a = p[0], b = p[1], c = p[2], d = p[3];
             return std::make_pair(join({X(a, b), K(a, b, c, d)}), join({K(a, b, c, d), X(b, d), N(b), N(d)}));
         },
         {0, 1, 2, 3}},
        {"Rep6", 4,
         [](const V& p) {
             int a = p[0], b = p[1], c = p[2], d = p[3];
             return std::make_pair(join({X(b, c), K(a, b, c, d)}),
                                   join({N(a), K(a, b, c, d), N(a), K(a, b, c, d), N(a)}));
         },
         {0, 1, 2, 3}},
        {"Rep7", 4,
         [](const V& p) {
             int a = p[0], b = p[1], c = p[2], d = p[3];
             return std::make_pair(join({X(c, d), K(a, b, c, d)}), join({K(a, b, c, d), X(b, d)}));
         },
         {0, 1, 2, 3}},
        // a < e < b < c < d
        {"Perm8", 5,
         [](const V& p) {
             int a = p[0], e = p[1], b = p[2], c = p[3], d = p[4];
             return std::make_pair(join({X(a, e), K(a, b, c, d)}), join({K(e, b, c, d), X(a, e)}));
         },
         {0, 2, 3, 4, 1}},
        // a < b < e < c < d
        {"Perm9", 5,
         [](const V& p) {
             int a = p[0], b = p[1], e = p[2], c = p[3], d = p[4];
             return std::make_pair(join({X(b, e), K(a, b, c, d)}), join({K(a, e, c, d), X(b, e)}));
         },
         {0, 1, 3, 4, 2}},
        // a < b < c < e < d
        {"Perm10", 5,
         [](const V& p) {
             int a = p[0], b = p[1], c = p[2], e = p[3], d = p[4];
             return std::make_pair(join({X(c, e), K(a, b, c, d)}), join({K(a, b, e, d), X(c, e)}));
         },
         {0, 1, 2, 4, 3}},
        {"Perm11", 5,
         [](const V& p) {
             int a = p[0], b = p[1], c = p[2], d = p[3], e = p[4];
             return std::make_pair(join({X(d, e), K(a, b, c, d)}), join({K(a, b, c, e), X(d, e)}));
         },
         {0, 1, 2, 3, 4}},
        {"Rep8", 6,
         [](const V& p) {
             int a = p[0], b = p[1], c = p[2], d = p[3], e = p[4], f = p[5];
             return std::make_pair(join({K(a, b, c, d), K(b, d, e, f)}), join({K(c, d, e, f), K(a, b, c, e)}));
         },
         {0, 1, 2, 3, 4, 5}},
        {"Rep9", 8,
         [](const V& p) {
             int a = p[0], b = p[1], c = p[2], d = p[3], e = p[4], f = p[5], g = p[6], h = p[7];
             std::string r = rho(a, b, c, d, e, f, g, h);
             return std::make_pair(join({N(a), N(e), X(a, e), r}), join({r, X(a, e), N(e), N(a)}));
         },
         {0, 1, 2, 3, 4, 5, 6, 7}},
    };
    return s;
}

const std::vector<std::string> kPartial = {"ZCom1", "Perm3", "Rep3", "Perm2", "Perm4", "KCom1"};

void combinations(int n, int m, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> c(m);
    std::function<void(int, int)> rec = [&](int i, int start) {
        if (i == m) {
            f(c);
            return;
        }
        for (int v = start; v <= n - (m - i); ++v) {
            c[i] = v;
            rec(i + 1, v + 1);
        }
    };
    rec(0, 0);
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) != b.end()) return false;
    return true;
}

RelationSet partial_schema(const std::string& name, int n) {
    RelationSet out;
    auto commute = [&](const std::string& id, const std::string& p, const std::string& q) {
        out.push_back(rel(id, join({p, q}), join({q, p})));
    };
    if (name == "ZCom1") {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (a != b) commute(params_id(name, {a, b}), N(a), N(b));
    } else if (name == "Perm3") {
        combinations(n, 2, [&](const std::vector<int>& p) {
            for (int c = 0; c < n; ++c)
                if (c != p[0] && c != p[1]) commute(params_id(name, {p[0], p[1], c}), X(p[0], p[1]), N(c));
        });
    } else if (name == "Rep3") {
        combinations(n, 4, [&](const std::vector<int>& q) {
            for (int a = 0; a < n; ++a)
                if (std::find(q.begin(), q.end(), a) == q.end())
                    commute(params_id(name, {a, q[0], q[1], q[2], q[3]}), N(a), K(q[0], q[1], q[2], q[3]));
        });
    } else if (name == "Perm2") {
        combinations(n, 2, [&](const std::vector<int>& p) {
            combinations(n, 2, [&](const std::vector<int>& q) {
                if (disjoint(p, q)) commute(params_id(name, {p[0], p[1], q[0], q[1]}), X(p[0], p[1]), X(q[0], q[1]));
            });
        });
    } else if (name == "Perm4") {
        combinations(n, 2, [&](const std::vector<int>& p) {
            combinations(n, 4, [&](const std::vector<int>& q) {
                if (disjoint(p, q))
                    commute(params_id(name, {p[0], p[1], q[0], q[1], q[2], q[3]}), X(p[0], p[1]),
                            K(q[0], q[1], q[2], q[3]));
            });
        });
    } else if (name == "KCom1") {
        combinations(n, 4, [&](const std::vector<int>& p) {
            combinations(n, 4, [&](const std::vector<int>& q) {
                if (disjoint(p, q))
                    commute(params_id(name, {p[0], p[1], p[2], p[3], q[0], q[1], q[2], q[3]}), K(p[0], p[1], p[2], p[3]),
                            K(q[0], q[1], q[2], q[3]));
            });
        });
    } else {
        throw std::invalid_argument("unknown schema '" + name + "'");
    }
    return out;
}

RelationSet linear_schema(const LinearSchema& s, int n) {
    RelationSet out;
    combinations(n, s.m, [&](const std::vector<int>& p) {
        auto [l, r] = s.body(p);
        std::vector<int> letters(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) letters[i] = p[s.letters[i]];
        out.push_back(rel(params_id(s.name, letters), l, r));
    });
    return out;
}

std::size_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::size_t formula_count(const std::string& name, std::size_t n) {
    if (name == "ZCom1") return n * (n - 1);
    if (name == "Perm3") return binom(n, 2) * (n - 2);
    if (name == "Rep3") return binom(n, 4) * (n - 4);
    if (name == "Perm2") return binom(n, 2) * binom(n - 2, 2);
    if (name == "Perm4") return binom(n, 2) * binom(n - 2, 4);
    if (name == "KCom1") return binom(n, 4) * binom(n - 4, 4);
    return binom(n, static_cast<std::size_t>(schema_arity(name)));
}

// ---- fixed tables ----

const std::vector<std::pair<std::string, std::string>>& r0_text() {
    static const std::vector<std::pair<std::string, std::string>> t = {
        {"CZ01", "K12 CX01 K12"},
        {"X1", "CX01 X0 CX01 X0"},
        {"Z0", "CZ01 CX01 CZ01 CX01"},
        {"Z1", "K12 X1 K12"},
        {"CX20", "X1 CCX12 X1 CCX12"},
        {"CX21", "CX20 CX01 CX20 CX01"},
        {"CX12", "K12 CX21 K12"},
        {"SW12", "CX12 CX21 CX12"},
        {"CX02", "SW12 CX01 SW12"},
        {"SW02", "CX02 CX20 CX02"},
        {"K01", "SW02 K12 SW02"},
        {"CX10", "K01 CX01 K01"},
        {"SW01", "CX01 CX10 CX01"},
        {"CCX02", "SW01 CCX12 SW01"},
        {"X2", "SW02 X0 SW02"},
        {"Z2", "SW02 Z0 SW02"},
        {"CCX01", "K12 CCX02 K12"},
        {"CZ02", "SW12 CZ01 SW12"},
        {"CZ12", "SW01 CZ02 SW01"},
        {"SW12", "CZ12 K12 CZ12 K12 CZ12 K12"},
        {"X0 X0", "."},
        {"CX01 CX01", "."},
        {"K12 K12", "."},
        {"CCX12 CCX12", "."},
        {"K01 K01", "."},
        {"CX12 X0", "X0 CX12"},
        {"X0 K12", "K12 X0"},
        {"X1", "SW01 X0 SW01"},
        {"CX20", "SW02 CX02 SW02"},
        {"CX12", "SW01 CX02 SW01"},
        {"CX21", "SW01 CX20 SW01"},
        {"CCX01", "SW02 CCX12 SW02"},
        {"CCX01", "SW12 CCX02 SW12"},
        {"Z1", "SW01 Z0 SW01"},
        {"K01", "SW01 K01 SW01"},
        {"CCX12 CX10", "CX10 CCX12"},
        {"X0 CCX12", "CCX12 X0"},
        {"X0 CX10", "CX10 X0"},
        {"K01 K12", "K12 K01"},
        {"CZ01 CZ12", "CZ12 CZ01"},
        {"K01 Z0", "X0 K01"},
        {"X0 CCX01", "CCX01 CX12 X0"},
        {"CX01 CZ12", "CZ12 CZ02 CX01"},
        {"CX12 CCX12", "CCX12 CX10 CX12"},
        {"CCX12 CX01", "CX01 CCX02 CCX12 CCX02"},
        {"CCX01 CCX02", "CCX02 CCX01 CCX02 CCX01"},
    };
    return t;
}

RelationSet r0_table() {
    RelationSet out;
    int i = 0;
    for (const auto& [l, r] : r0_text()) out.push_back(rel("r0." + std::to_string(++i), l, r));
    return out;
}

RelationSet r3_fixed(const std::string& prefix, int start) {
    std::string r9 = rho(0, 1, 2, 3, 4, 5, 6, 7);
    std::vector<std::pair<std::string, std::string>> f = {
        {join({N(0), N(0)}), "."},
        {join({K(0, 1, 2, 3), K(0, 1, 2, 3)}), "."},
        {join({N(4), K(0, 1, 2, 3)}), join({K(0, 1, 2, 3), N(4)})},
        {join({N(0), N(4)}), join({N(4), N(0)})},
        {join({K(0, 1, 2, 3), K(4, 5, 6, 7)}), join({K(4, 5, 6, 7), K(0, 1, 2, 3)})},
        {join({X(0, 1), K(0, 1, 2, 3)}), join({K(0, 1, 2, 3), X(1, 3), N(1), N(3)})},
        {join({X(1, 2), K(0, 1, 2, 3)}), join({N(0), K(0, 1, 2, 3), N(0), K(0, 1, 2, 3), N(0)})},
        {join({X(2, 3), K(0, 1, 2, 3)}), join({K(0, 1, 2, 3), X(1, 3)})},
        {join({K(0, 1, 2, 3), K(1, 3, 4, 5)}), join({K(2, 3, 4, 5), K(0, 1, 2, 4)})},
        {join({N(0), N(4), X(0, 4), r9}), join({r9, X(0, 4), N(4), N(0)})},
    };
    RelationSet out;
    int i = start;
    for (const auto& [l, r] : f) out.push_back(rel(prefix + std::to_string(i++), l, r));
    return out;
}

RelationSet r3_table(int n) {
    if (n < 8) throw std::invalid_argument("R3 needs n >= 8");
    std::vector<std::pair<std::string, std::string>> f;
    for (int a = 0; a + 1 < n; ++a) f.emplace_back(join({X(a, a + 1), X(a, a + 1)}), ".");
    // b > 0
    for (int b = 1; b + 1 < n; ++b) f.emplace_back(join({X(b, b + 1), N(0)}), join({N(0), X(b, b + 1)}));
    // c > 3
    for (int c = 4; c + 1 < n; ++c)
        f.emplace_back(join({X(c, c + 1), K(0, 1, 2, 3)}), join({K(0, 1, 2, 3), X(c, c + 1)}));
    for (int a = 0; a + 2 < n; ++a)
        f.emplace_back(join({X(a, a + 1), X(a, a + 2)}), join({X(a + 1, a + 2), X(a, a + 1)}));
    for (int a = 0; a + 2 < n; ++a)
        for (int b = a + 2; b < n; ++b)
            f.emplace_back(join({X(a + 1, b), X(a, a + 1)}), join({X(a, b), X(a + 1, b)}));
    RelationSet out;
    int i = 0;
    for (const auto& [l, r] : f) out.push_back(rel("r3." + std::to_string(++i), l, r));
    auto fixed = r3_fixed("r3.", i + 1);
    out.insert(out.end(), fixed.begin(), fixed.end());
    return out;
}

RelationSet r4_table() {
    RelationSet out = r3_fixed("r4.", 1);
    int i = static_cast<int>(out.size());
    for (int b = 1; b <= 6; ++b)
        out.push_back(rel("r4." + std::to_string(++i), join({X(b, b + 1), N(0)}), join({N(0), X(b, b + 1)})));
    for (int c = 4; c <= 6; ++c)
        out.push_back(rel("r4." + std::to_string(++i), join({X(c, c + 1), K(0, 1, 2, 3)}),
                          join({K(0, 1, 2, 3), X(c, c + 1)})));
    return out;
}

RelationSet hpush_table() {
    return {
        rel("hpush.x0", "H2 X0", "X0 H2"),
        rel("hpush.cx01", "H2 CX01", "CX01 H2"),
        rel("hpush.ccx12", "H2 CCX12", "K01 K12 CCZ K12 K01 H2"),
        rel("hpush.ccz", "H2 CCZ", "CCX01 H2"),
        rel("hpush.k12", "H2 K12", "K12 H2"),
        rel("hpush.tlk", "H2 TLK[0,1,2,3]", "TLK[0,1,2,3] H2"),
        rel("hpush.hh", "H2 H2", "."),
    };
}

RelationSet coxeter_table() {
    RelationSet out;
    const auto& n = coxeter_matrix();
    for (int j = 1; j <= 8; ++j)
        for (int k = j; k <= 8; ++k) {
            Word base = {"r" + std::to_string(j), "r" + std::to_string(k)};
            out.push_back(Relation{"cox.r" + std::to_string(j) + "r" + std::to_string(k), power(base, n[j - 1][k - 1]), {}});
        }
    return out;
}

RelationSet e8d_table() {
    RelationSet out;
    for (int j = 1; j <= 8; ++j)
        out.push_back(Relation{"e8d.r" + std::to_string(j), {"r" + std::to_string(j)}, coxeter_circuit(j)});
    return out;
}

RelationSet de8_table() {
    RelationSet out;
    for (const auto& [name, w] : e8_gate_words()) out.push_back(Relation{"de8." + name, {name}, w});
    auto f4 = r0_table();
    out.insert(out.end(), f4.begin(), f4.begin() + 19);
    return out;
}

RelationSet rx_table() {
    return {
        rel("rx.X", "X0", join({X(0, 4), X(1, 5), X(2, 6), X(3, 7)})),
        rel("rx.CX", "CX01", join({X(4, 6), X(5, 7)})),
        rel("rx.K", "K12", join({K(4, 5, 6, 7), "X0", K(4, 5, 6, 7), "X0"})),
    };
}

RelationSet tlx_table() {
    return {
        rel("tlx.01", X(0, 1), "X0 X1 CCX01 X1 X0"),
        rel("tlx.12", X(1, 2), "X0 CCX01 CCX02 CCX01 X0"),
        rel("tlx.23", X(2, 3), "X0 CCX01 X0"),
        rel("tlx.34", X(3, 4), "X0 X2 CCX01 X0 CCX12 CCX02 CCX12 X0 CCX01 X2 X0"),
        rel("tlx.45", X(4, 5), "X1 CCX01 X1"),
        rel("tlx.56", X(5, 6), "CCX01 CCX02 CCX01"),
        rel("tlx.67", X(6, 7), "CCX01"),
        rel("tlx.neg7", N(7), "CCZ"),
        rel("tlx.neg0", N(0), "X0 X1 X2 CCZ X2 X1 X0"),
    };
}

RelationSet ident_table() {
    std::string k = K(0, 1, 2, 3);
    return {
        rel("ident.ccz", "CCZ", join({"K12 CZ12 X0", k, "X0 CZ12 K12", X(5, 6)})),
        rel("ident.k0123", k, join({"K12 CCZ K12 CCZ K12 CCZ", X(5, 6)})),
        rel("ident.k02", "K02", "K01 K12"),
        rel("ident.k12pos", "K12", join({K(4, 5, 6, 7), "X0", K(4, 5, 6, 7), "X0"})),
        rel("ident.k12neg", "K12", join({k, "X0", k, "X0"})),
    };
}

// ---- R_D families ----

GateSymbol swap_image(const GateSymbol& g, const GateSymbol& sw) {
    auto img = [&](int q) { return q == sw.params[0] ? sw.params[1] : q == sw.params[1] ? sw.params[0] : q; };
    GateSymbol out = g;
    for (int& q : out.params) q = img(q);
    if (out.kind != GateKind::CXctrl) std::sort(out.params.begin(), out.params.end());
    return out;
}

bool supports_overlap(const std::string& a, const std::string& b) {
    auto sa = qubit_support(symbol(a)), sb = qubit_support(symbol(b));
    return !disjoint(sa, sb);
}

RelationSet bifunctoriality() {
    RelationSet out;
    const auto& s = sigma_D();
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (!supports_overlap(s[i], s[j])) out.push_back(Relation{"rd.bif." + s[i] + "." + s[j], {s[i], s[j]}, {s[j], s[i]}});
    return out;
}

RelationSet symmetry() {
    RelationSet out;
    const auto& s = sigma_D();
    for (const std::string sw : {"SW01", "SW02", "SW12"}) {
        GateSymbol sg = symbol(sw);
        for (const auto& m : s) {
            std::string image = symbol_name(swap_image(symbol(m), sg));
            if (std::find(s.begin(), s.end(), image) == s.end()) continue;
            out.push_back(Relation{"rd.sym." + sw + "." + m, {sw, m, sw}, {image}});
        }
    }
    return out;
}

RelationSet order_family() {
    RelationSet out;
    for (const auto& m : sigma_D()) out.push_back(Relation{"rd.ord." + m, {m, m}, {}});
    return out;
}

// Shortest lex-least words over Sigma_D by exact group element.
class GeodesicTable {
public:
    explicit GeodesicTable(int depth) {
        const auto& s = sigma_D();
        for (const auto& g : s) gens_.push_back(pack(gate_matrix(g)));
        PackedMat id = PackedMat::identity(8);
        words_.emplace(id, Word{});
        std::vector<PackedMat> layer = {id};
        for (int d = 1; d <= depth; ++d) {
            std::vector<PackedMat> next;
            for (const auto& m : layer) {
                const Word& base = words_.at(m);
                for (std::size_t i = 0; i < gens_.size(); ++i) {
                    PackedMat p = packed_mul(m, gens_[i]);
                    if (words_.count(p)) continue;
                    Word w = base;
                    w.push_back(s[i]);
                    words_.emplace(p, std::move(w));
                    next.push_back(p);
                }
            }
            layer = std::move(next);
        }
    }

    const Word* find(const PackedMat& m) const {
        auto it = words_.find(m);
        return it == words_.end() ? nullptr : &it->second;
    }

private:
    std::vector<PackedMat> gens_;
    std::unordered_map<PackedMat, Word, PackedMatHash> words_;
};

const GeodesicTable& geodesics(int depth) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GeodesicTable>> tables;
    std::lock_guard<std::mutex> lock(mu);
    auto& t = tables[depth];
    if (!t) t = std::make_unique<GeodesicTable>(depth);
    return *t;
}

RelationSet commutators() {
    RelationSet out;
    const auto& s = sigma_D();
    for (const auto& m : s)
        for (const auto& n : s)
            if (m != n && supports_overlap(m, n)) out.push_back(commutator_family(m, n));
    return out;
}

RelationSet rd_all() {
    RelationSet out;
    for (auto part : {bifunctoriality(), symmetry(), order_family(), commutators()})
        out.insert(out.end(), part.begin(), part.end());
    out.push_back(rel("rd.sw12", "SW12", "CZ12 K12 CZ12 K12 CZ12 K12"));
    return out;
}

}  // namespace

const std::vector<std::string>& multilevel_schemas() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& s : linear_schemas()) v.push_back(s.name);
        v.insert(v.end(), kPartial.begin(), kPartial.end());
        return v;
    }();
    return names;
}

bool is_linear_schema(const std::string& name) {
    for (const auto& s : linear_schemas())
        if (name == s.name) return true;
    return false;
}

int schema_arity(const std::string& name) {
    for (const auto& s : linear_schemas())
        if (name == s.name) return s.m;
    static const std::map<std::string, int> partial = {{"ZCom1", 2}, {"Perm3", 3}, {"Rep3", 5},
                                                       {"Perm2", 4}, {"Perm4", 6}, {"KCom1", 8}};
    auto it = partial.find(name);
    if (it == partial.end()) throw std::invalid_argument("unknown schema '" + name + "'");
    return it->second;
}

Relation commutator_family(const std::string& M, const std::string& N, int max_depth) {
    const auto& s = sigma_D();
    for (const auto& g : {M, N})
        if (std::find(s.begin(), s.end(), g) == s.end()) throw std::invalid_argument(g + " is not a Sigma_D generator");
    if (!supports_overlap(M, N))
        throw std::invalid_argument(M + " and " + N + " have disjoint support; use the bifunctoriality family");
    // [N]^-1 = [N] for every Sigma_D generator
    GateMatrix target = word_matrix({N, M, N});
    const Word* w = geodesics(max_depth).find(pack(target));
    if (!w)
        throw std::runtime_error("no word of length <= " + std::to_string(max_depth) + " for the commutator of " + M +
                                 " and " + N);
    Word rhs = {N};
    rhs.insert(rhs.end(), w->begin(), w->end());
    return Relation{"rd.com." + M + "." + N, {M, N}, rhs};
}

RelationSet instantiate(const std::string& schema, std::size_t n) {
    for (const auto& s : linear_schemas())
        if (schema == s.name) {
            if (n < static_cast<std::size_t>(std::max(4, s.m)))
                throw std::invalid_argument(schema + " needs n >= " + std::to_string(std::max(4, s.m)));
            return linear_schema(s, static_cast<int>(n));
        }
    if (std::find(kPartial.begin(), kPartial.end(), schema) != kPartial.end()) {
        if (n < 4) throw std::invalid_argument(schema + " needs n >= 4");
        return partial_schema(schema, static_cast<int>(n));
    }
    if (schema == "R_n") {
        RelationSet out;
        for (const auto& name : multilevel_schemas()) {
            if (name == "Rep9" && n < 8) continue;
            if (name == "KCom1" && n < 8) continue;
            auto part = instantiate(name, n);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    if (schema == "R3") return r3_table(static_cast<int>(n));

    auto need8 = [&] {
        if (n != 8) throw std::invalid_argument("table " + schema + " is fixed at n = 8");
    };
    need8();
    if (schema == "R_E8") return coxeter_table();
    if (schema == "R_E8D" || schema == "R_E8(D)") return e8d_table();
    if (schema == "R_DE8" || schema == "R_D(E8)") return de8_table();
    if (schema == "R0" || schema == "R_0") return r0_table();
    if (schema == "R4") return r4_table();
    if (schema == "TofH") return hpush_table();
    if (schema == "R1" || schema == "R_1") {
        auto out = r0_table();
        auto r4 = r4_table();
        out.insert(out.end(), r4.begin(), r4.end());
        return out;
    }
    if (schema == "R2" || schema == "R_2") {
        auto out = instantiate("R1", 8);
        auto r8 = hpush_table();
        out.insert(out.end(), r8.begin(), r8.end());
        return out;
    }
    if (schema == "RX") return rx_table();
    if (schema == "TLXDEC") return tlx_table();
    if (schema == "IDENT") return ident_table();
    if (schema == "Bifunctoriality") return bifunctoriality();
    if (schema == "Symmetry") return symmetry();
    if (schema == "Order") return order_family();
    if (schema == "Commutator") return commutators();
    if (schema == "R_D" || schema == "RD") return rd_all();
    throw std::invalid_argument("unknown schema or table '" + schema + "'");
}

CountReport count_all(std::size_t n) {
    CountReport rep;
    rep.n = n;
    std::map<int, std::size_t> by_m;
    for (const auto& name : multilevel_schemas()) {
        SchemaCount c;
        c.name = name;
        c.levels = schema_arity(name);
        c.linear = is_linear_schema(name);
        c.formula = formula_count(name, n);
        c.enumerated = static_cast<std::size_t>(c.levels) <= n && n >= 4 ? instantiate(name, n).size() : 0;
        (c.linear ? rep.linear_total : rep.partial_total) += c.enumerated;
        if (c.linear) by_m[c.levels] += c.enumerated;
        rep.rows.push_back(c);
    }
    rep.total = rep.linear_total + rep.partial_total;
    rep.linear_by_levels.assign(by_m.begin(), by_m.end());
    return rep;
}

const std::vector<TableInfo>& builtin_tables() {
    static const std::vector<TableInfo> t = {
        {"R_E8", "Coxeter relations (r_j r_k)^N = ."},
        {"R_E8D", "r_j equals its circuit"},
        {"R_DE8", "primitive gates as r-words plus the defining relations"},
        {"R0", "the 46-relation presentation over Sigma_D"},
        {"R_D", "bifunctoriality, symmetry, order and commutator families"},
        {"R3", "reduced multi-level relations"},
        {"R4", "the final multi-level relations"},
        {"R1", "R0 with R4"},
        {"R2", "R1 with the Hadamard relations"},
        {"TofH", "Hadamard relations only"},
        {"R_n", "all multi-level schema instances"},
        {"RX", "circuit gates as multi-level words"},
        {"TLXDEC", "two-level X decompositions"},
        {"IDENT", "CCZ and K identities"},
    };
    return t;
}

Presentation builtin_presentation(const std::string& name, std::size_t n) {
    Presentation p;
    p.relations = instantiate(name, n);
    auto used = alphabet_of(p.relations);
    if (name == "R0" || name == "R_0" || name == "R_D" || name == "RD") {
        p.alphabet = sigma_D();
        for (const auto& s : used)
            if (!p.has_symbol(s)) p.alphabet.push_back(s);
    } else {
        p.alphabet = used;
    }
    p.interp = standard_interpretation(p.alphabet, n);
    return p;
}

TableResolver builtin_resolver() {
    return [](const std::string& name) { return builtin_presentation(name); };
}

}  // namespace tofh
