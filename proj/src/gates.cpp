#include "tofh/gates.hpp"

#include "tofh/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <stdexcept>

namespace tofh {

bool is_multilevel(GateKind k) {
    return k == GateKind::OneLevelNeg || k == GateKind::TwoLevelX || k == GateKind::FourLevelK;
}

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::optional<std::vector<int>> parse_bracket(std::string_view s, std::size_t count) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') return std::nullopt;
    s = s.substr(1, s.size() - 2);
    std::vector<int> out;
    while (true) {
        auto comma = s.find(',');
        auto part = s.substr(0, comma);
        if (!all_digits(part) || part.size() > 4) return std::nullopt;
        out.push_back(std::stoi(std::string(part)));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    if (out.size() != count) return std::nullopt;
    return out;
}

std::optional<std::vector<int>> parse_qubits(std::string_view s, std::size_t count) {
    if (s.size() != count || !all_digits(s)) return std::nullopt;
    std::vector<int> q;
    for (char c : s) {
        int v = c - '0';
        if (v > 2) return std::nullopt;
        q.push_back(v);
    }
    return q;
}

bool increasing(const std::vector<int>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i - 1] >= v[i]) return false;
    return true;
}

int qubit_bit(std::size_t index, int q) { return static_cast<int>(index >> (2 - q)) & 1; }

}  // namespace

std::optional<GateSymbol> parse_symbol(std::string_view tok) {
    auto make = [](GateKind k, std::vector<int> p) { return std::optional<GateSymbol>(GateSymbol{k, std::move(p)}); };
    auto starts = [&](std::string_view p) { return tok.substr(0, p.size()) == p; };

    if (tok == "CCZ") return make(GateKind::CCZ, {});
    if (starts("NEG")) {
        if (auto p = parse_bracket(tok.substr(3), 1)) return make(GateKind::OneLevelNeg, *p);
        return std::nullopt;
    }
    if (starts("TLX")) {
        if (auto p = parse_bracket(tok.substr(3), 2)) return make(GateKind::TwoLevelX, *p);
        return std::nullopt;
    }
    if (starts("TLK")) {
        if (auto p = parse_bracket(tok.substr(3), 4)) return make(GateKind::FourLevelK, *p);
        return std::nullopt;
    }
    if (tok.size() == 2 && tok[0] == 'r' && tok[1] >= '1' && tok[1] <= '8') return make(GateKind::Coxeter, {tok[1] - '0'});

    struct Prefix {
        std::string_view text;
        GateKind kind;
        std::size_t nq;
    };
    static const Prefix prefixes[] = {
        {"CCX", GateKind::CCX, 2}, {"CX", GateKind::CXctrl, 2}, {"CZ", GateKind::CZctrl, 2}, {"SW", GateKind::Swap, 2},
        {"X", GateKind::X1q, 1},   {"Z", GateKind::Z1q, 1},     {"H", GateKind::H1q, 1},     {"K", GateKind::Kpair, 2},
    };
    for (const auto& p : prefixes) {
        if (!starts(p.text)) continue;
        auto q = parse_qubits(tok.substr(p.text.size()), p.nq);
        if (!q) return std::nullopt;
        if (p.nq == 2) {
            if ((*q)[0] == (*q)[1]) return std::nullopt;
            // only CX distinguishes the order of its two qubits
            if (p.kind != GateKind::CXctrl && (*q)[0] > (*q)[1]) return std::nullopt;
        }
        return make(p.kind, *q);
    }
    return std::nullopt;
}

GateSymbol symbol(std::string_view tok) {
    auto g = parse_symbol(tok);
    if (!g) throw std::invalid_argument("unknown gate token '" + std::string(tok) + "'");
    return *g;
}

std::string symbol_name(const GateSymbol& g) {
    auto digits = [&] {
        std::string s;
        for (int q : g.params) s += std::to_string(q);
        return s;
    };
    auto bracket = [&] {
        std::string s = "[";
        for (std::size_t i = 0; i < g.params.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(g.params[i]);
        }
        return s + "]";
    };
    switch (g.kind) {
        case GateKind::X1q: return "X" + digits();
        case GateKind::Z1q: return "Z" + digits();
        case GateKind::H1q: return "H" + digits();
        case GateKind::Kpair: return "K" + digits();
        case GateKind::CXctrl: return "CX" + digits();
        case GateKind::CZctrl: return "CZ" + digits();
        case GateKind::CCX: return "CCX" + digits();
        case GateKind::CCZ: return "CCZ";
        case GateKind::Swap: return "SW" + digits();
        case GateKind::OneLevelNeg: return "NEG" + bracket();
        case GateKind::TwoLevelX: return "TLX" + bracket();
        case GateKind::FourLevelK: return "TLK" + bracket();
        case GateKind::Coxeter: return "r" + digits();
    }
    return "?";
}

bool well_formed(const GateSymbol& g, std::size_t dim) {
    if (is_multilevel(g.kind)) {
        if (!increasing(g.params)) return false;
        return g.params.front() >= 0 && static_cast<std::size_t>(g.params.back()) < dim;
    }
    if (g.kind == GateKind::Coxeter) return dim == 8 && g.params.size() == 1 && g.params[0] >= 1 && g.params[0] <= 8;
    if (dim != 8) return false;
    for (int q : g.params)
        if (q < 0 || q > 2) return false;
    return true;
}

std::vector<int> qubit_support(const GateSymbol& g) {
    if (is_multilevel(g.kind) || g.kind == GateKind::Coxeter)
        throw std::invalid_argument("qubit_support: " + symbol_name(g) + " is not a circuit gate");
    if (g.kind == GateKind::CCZ || g.kind == GateKind::CCX) return {0, 1, 2};
    std::vector<int> s = g.params;
    std::sort(s.begin(), s.end());
    return s;
}

GateMatrix permutation_matrix(const std::vector<int>& images) {
    GateMatrix m(images.size());
    // column a carries e_a to e_images[a]
    for (std::size_t a = 0; a < images.size(); ++a) m.at(images[a], a) = RingElem(1);
    return m;
}

GateMatrix level_operator(const GateSymbol& g, std::size_t dim) {
    if (!is_multilevel(g.kind)) throw std::invalid_argument("level_operator: " + symbol_name(g) + " is not multi-level");
    for (int p : g.params)
        if (p < 0 || static_cast<std::size_t>(p) >= dim)
            throw std::invalid_argument("level_operator: level out of range in " + symbol_name(g));
    auto sorted = g.params;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("level_operator: repeated level in " + symbol_name(g));

    GateMatrix m = GateMatrix::identity(dim);
    const auto& p = g.params;
    switch (g.kind) {
        case GateKind::OneLevelNeg: m.at(p[0], p[0]) = RingElem(-1); break;
        case GateKind::TwoLevelX:
            m.at(p[0], p[0]) = RingElem(0);
            m.at(p[1], p[1]) = RingElem(0);
            m.at(p[0], p[1]) = RingElem(1);
            m.at(p[1], p[0]) = RingElem(1);
            break;
        default: {
            static const int hh[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) m.at(p[i], p[j]) = RingElem(mpz_class(hh[i][j]), 2);
        }
    }
    return m;
}

GateMatrix gate_matrix(const GateSymbol& g, unsigned qubits) {
    if (is_multilevel(g.kind)) {
        if (!well_formed(g, std::size_t(1) << qubits))
            throw std::invalid_argument("gate_matrix: ill-formed operator " + symbol_name(g));
        return level_operator(g, std::size_t(1) << qubits);
    }
    if (qubits != 3) throw std::invalid_argument("gate_matrix: circuit gates are defined on three qubits");
    if (g.kind == GateKind::Coxeter) return coxeter_generator(g.params.at(0));
    if (!well_formed(g, 8)) throw std::invalid_argument("gate_matrix: ill-formed gate " + symbol_name(g));

    const std::size_t n = 8;
    const auto& q = g.params;
    auto perm = [&](auto f) {
        std::vector<int> img(n);
        for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<int>(f(i));
        return permutation_matrix(img);
    };
    auto diag = [&](auto neg) {
        GateMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = RingElem(neg(i) ? -1 : 1);
        return m;
    };
    auto flip = [](std::size_t i, int qb) { return i ^ (std::size_t(1) << (2 - qb)); };
    auto hadamard = [&](int j) {
        GateMatrix m(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                if (((r ^ c) & ~(std::size_t(1) << (2 - j))) != 0) continue;
                int s = (qubit_bit(r, j) && qubit_bit(c, j)) ? -1 : 1;
                m.at(r, c) = RingElem(mpz_class(s), 1);
            }
        return m;
    };

    switch (g.kind) {
        case GateKind::X1q: return perm([&](std::size_t i) { return flip(i, q[0]); });
        case GateKind::CXctrl:
            return perm([&](std::size_t i) { return qubit_bit(i, q[0]) ? flip(i, q[1]) : i; });
        case GateKind::CCX: {
            int t = 3 - q[0] - q[1];
            return perm([&](std::size_t i) { return qubit_bit(i, q[0]) && qubit_bit(i, q[1]) ? flip(i, t) : i; });
        }
        case GateKind::Swap:
            return perm([&](std::size_t i) {
                return qubit_bit(i, q[0]) == qubit_bit(i, q[1]) ? i : flip(flip(i, q[0]), q[1]);
            });
        case GateKind::Z1q: return diag([&](std::size_t i) { return qubit_bit(i, q[0]); });
        case GateKind::CZctrl: return diag([&](std::size_t i) { return qubit_bit(i, q[0]) && qubit_bit(i, q[1]); });
        case GateKind::CCZ: return diag([](std::size_t i) { return i == 7; });
        case GateKind::H1q: return hadamard(q[0]);
        case GateKind::Kpair: return mat_mul(hadamard(q[0]), hadamard(q[1]));
        default: break;
    }
    throw std::invalid_argument("gate_matrix: unsupported gate " + symbol_name(g));
}

GateMatrix gate_matrix(std::string_view tok, unsigned qubits) { return gate_matrix(symbol(tok), qubits); }

std::size_t Interpretation::dim() const { return images.empty() ? 0 : images.begin()->second.dim(); }

Interpretation standard_interpretation(const std::vector<std::string>& alphabet, std::size_t dim) {
    Interpretation in;
    in.alphabet = alphabet;
    for (const auto& s : alphabet) {
        GateSymbol g = symbol(s);
        if (is_multilevel(g.kind)) {
            if (!well_formed(g, dim)) throw std::invalid_argument("ill-formed operator " + s);
            in.images.emplace(s, level_operator(g, dim));
        } else {
            if (dim != 8) throw std::invalid_argument("circuit gate " + s + " needs dimension 8");
            in.images.emplace(s, gate_matrix(g, 3));
        }
    }
    return in;
}

GateMatrix interp_word(const Interpretation& in, const Word& w) {
    std::size_t d = in.dim();
    GateMatrix acc = GateMatrix::identity(d);
    for (const auto& s : w) {
        auto it = in.images.find(s);
        if (it == in.images.end()) throw std::invalid_argument("interp_word: symbol '" + s + "' not in alphabet");
        acc = mat_mul(acc, it->second);
    }
    return acc;
}

namespace {

const GateMatrix& cached_matrix(const std::string& tok, std::size_t dim) {
    static std::mutex mu;
    static std::map<std::pair<std::string, std::size_t>, GateMatrix> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(tok, dim);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    GateSymbol g = symbol(tok);
    GateMatrix m;
    if (is_multilevel(g.kind)) {
        if (!well_formed(g, dim)) throw std::invalid_argument("ill-formed operator " + tok);
        m = level_operator(g, dim);
    } else {
        if (dim != 8) throw std::invalid_argument("circuit gate " + tok + " needs dimension 8");
        m = gate_matrix(g, 3);
    }
    return cache.emplace(key, std::move(m)).first->second;
}

}  // namespace

GateMatrix word_matrix(const Word& w, std::size_t dim) {
    GateMatrix acc = GateMatrix::identity(dim);
    for (const auto& s : w) acc = mat_mul(acc, cached_matrix(s, dim));
    return acc;
}

const CoxeterMatrix& coxeter_matrix() {
    static const CoxeterMatrix n = {{
        {1, 3, 2, 2, 2, 2, 2, 2},
        {3, 1, 3, 2, 2, 2, 2, 2},
        {2, 3, 1, 3, 2, 2, 2, 2},
        {2, 2, 3, 1, 3, 2, 2, 2},
        {2, 2, 2, 3, 1, 3, 3, 2},
        {2, 2, 2, 2, 3, 1, 2, 2},
        {2, 2, 2, 2, 3, 2, 1, 3},
        {2, 2, 2, 2, 2, 2, 3, 1},
    }};
    return n;
}

GateMatrix coxeter_generator(int j) {
    if (j < 1 || j > 8) throw std::invalid_argument("coxeter_generator: index must be 1..8");
    return householder(simple_roots()[j - 1]);
}

Word coxeter_circuit(int j) {
    static const char* circuits[8] = {
        "X0 X1 CCX01 X1 X0",
        "X0 CX21 CCX01 CX21 X0",
        "X0 CCX01 X0",
        "CX01 CX02 CCX12 CX02 CX01",
        "X1 CCX01 X1",
        "CX21 CCX01 CX21",
        "CZ01 CX21 CCX01 CX21 CZ01",
        "K12 X1 X2 CZ02 CCX12 CZ02 X2 X1 K12",
    };
    if (j < 1 || j > 8) throw std::invalid_argument("coxeter_circuit: index must be 1..8");
    return parse_word(circuits[j - 1]);
}

namespace {

using DefTable = std::vector<std::pair<std::string, std::string>>;

std::vector<std::pair<std::string, Word>> flatten_table(const DefTable& defs, const std::map<std::string, Word>& extra) {
    std::map<std::string, Word> done = extra;
    std::vector<std::pair<std::string, Word>> out;
    for (const auto& [name, body] : defs) {
        Word flat;
        for (const auto& tok : parse_word(body)) {
            auto it = done.find(tok);
            if (it != done.end())
                flat.insert(flat.end(), it->second.begin(), it->second.end());
            else
                flat.push_back(tok);
        }
        done[name] = flat;
        out.emplace_back(name, std::move(flat));
    }
    return out;
}

const DefTable& repaired_defs() {
    static const DefTable t = {
        {"w1", "r6 r7"},
        {"w2", "r6 r5 w1 r5 r6"},
        {"w3", "r5 r4 w2 r4 r5"},
        {"w4", "r4 r3 w3 r3 r4"},
        {"w5", "r3 r2 w4 r2 r3"},
        {"w6", "r2 r1 w5 r1 r2"},
        {"w7", "r7 r8 r6 w6 w4 w2 r8 w6 w4 w2 r6 r8 r7"},
        {"w8", "r1 r3 r5 w7"},
        {"w9", "r6 w7 w1 w7 r6"},
        {"w10", "r2 r6 w5 w3 r8 w2 w9 r8 w5 w3 w2 w9"},
        {"w11", "r2 r6"},
        {"w12", "r4 r3 r5 r4"},
        {"w13", "w11 w12 w11"},
        {"w14", "w10 w9 w10"},
    };
    return t;
}

}  // namespace

std::vector<std::pair<std::string, Word>> construction_words() { return flatten_table(repaired_defs(), {}); }

std::vector<std::pair<std::string, Word>> printed_construction_words() {
    static const DefTable printed = {
        {"w1", "r6 r7"},
        {"w2", "r6 r5 w1 r5 r6"},
        {"w3", "r5 r4 w2 r4 r5"},
        {"w4", "r4 r3 w3 r3 r4"},
        {"w5", "r3 r2 w4 r2 r3"},
        {"w6", "r2 r1 w5 r1 r2"},
        {"w7", "r7 r8 r6 w6 w4 w2 r8 w6 w4 w2 r6 r8 r7"},
        {"w8", "r1 r3 r5 w7"},
        {"w9", "r6 w7 w1 w7 r6"},
        {"w10", "r2 r6 w5 w3 w2 r8 w9 r8 w5 w3 w2 w9"},
        {"w11", "w10 r4 w8 r4 w10 w8"},
        {"w12", "r2 r6"},
        {"w13", "w11 w12 w11"},
        {"w14", "w12 X0 w10 X0 w12"},
    };
    // the printed w14 mentions X0 directly; it is expanded through the repaired X0 word
    std::map<std::string, Word> extra;
    for (const auto& [name, w] : e8_gate_words())
        if (name == "X0") extra[name] = w;
    return flatten_table(printed, extra);
}

std::vector<std::pair<std::string, Word>> construction_targets() {
    return {
        {"w1", parse_word("CZ01 CZ02")}, {"w7", parse_word("CCX01")}, {"w8", parse_word("X2")},
        {"w9", parse_word("CZ01")},      {"w10", parse_word("K12")},  {"w11", parse_word("SW12")},
        {"w12", parse_word("SW01")},     {"w13", parse_word("SW02")}, {"w14", parse_word("CX01")},
    };
}

std::vector<std::pair<std::string, Word>> e8_gate_words() {
    auto defs = repaired_defs();
    defs.push_back({"X0", "w13 w8 w13"});
    defs.push_back({"CX01", "w14"});
    defs.push_back({"CCX12", "w13 w7 w13"});
    defs.push_back({"K12", "w10"});
    auto all = flatten_table(defs, {});
    return {all.end() - 4, all.end()};
}

}  // namespace tofh
