#include "tofh/equivalence.hpp"

#include "tofh/gates.hpp"
#include "tofh/schemas.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace tofh {

namespace {

const std::set<std::string>& pushable() {
    static const std::set<std::string> s = {"X0", "CX01", "CCX12", "CCZ", "K12", "TLK[0,1,2,3]"};
    return s;
}

// the listed rules, H2 g = g' H2
Word listed_rule(const std::string& g) {
    static const std::map<std::string, Word> rules = [] {
        std::map<std::string, Word> m;
        for (const auto& r : instantiate("TofH")) {
            if (r.lhs.size() != 2 || r.lhs[0] != "H2" || r.lhs[1] == "H2") continue;
            if (r.rhs.empty() || r.rhs.back() != "H2") continue;
            m[r.lhs[1]] = Word(r.rhs.begin(), r.rhs.end() - 1);
        }
        return m;
    }();
    auto it = rules.find(g);
    if (it == rules.end()) throw std::logic_error("no pushing rule for " + g);
    return it->second;
}

std::mutex cache_mu;

}  // namespace

const Word& basic_expansion(const std::string& g) {
    static std::map<std::string, Word> cache;
    std::lock_guard<std::mutex> lock(cache_mu);
    if (auto it = cache.find(g); it != cache.end()) return it->second;
    static const std::map<std::string, Word> defs = [] {
        std::map<std::string, Word> m;
        int k = 0;
        for (const auto& r : instantiate("R0")) {
            if (++k > 19) break;
            if (r.lhs.size() == 1 && !m.count(r.lhs[0])) m[r.lhs[0]] = r.rhs;
        }
        return m;
    }();
    std::function<Word(const std::string&, int)> expand = [&](const std::string& s, int depth) -> Word {
        if (pushable().count(s)) return {s};
        if (depth > 40) throw std::logic_error("defining words of " + g + " do not terminate");
        auto it = defs.find(s);
        if (it == defs.end()) throw std::invalid_argument("'" + s + "' is not a Sigma_1 symbol");
        Word out;
        for (const auto& t : it->second) {
            Word e = expand(t, depth + 1);
            out.insert(out.end(), e.begin(), e.end());
        }
        return out;
    };
    return cache.emplace(g, expand(g, 0)).first->second;
}

const Word& h_conjugate(const std::string& g) {
    static std::map<std::string, Word> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mu);
        if (auto it = cache.find(g); it != cache.end()) return it->second;
    }
    Word out;
    if (pushable().count(g)) {
        out = listed_rule(g);
    } else {
        for (const auto& t : basic_expansion(g)) {
            Word p = listed_rule(t);
            out.insert(out.end(), p.begin(), p.end());
        }
    }
#ifdef TOFH_CHECK_STEPS
    {
        GateMatrix h = gate_matrix("H2");
        if (word_matrix(out) != mat_mul(mat_mul(h, gate_matrix(g)), h))
            throw std::logic_error("pushing rule for " + g + " is wrong");
    }
#endif
    std::lock_guard<std::mutex> lock(cache_mu);
    return cache.emplace(g, std::move(out)).first->second;
}

NormalForm normalize_h(const Word& w) {
    // Left to right: the prefix read so far equals body . H2^h_exp, so a symbol
    // read while h_exp = 1 has the pending H2 pushed across it.
    NormalForm nf;
#ifdef TOFH_CHECK_STEPS
    const GateMatrix h = gate_matrix("H2");
    GateMatrix prefix = GateMatrix::identity(8), body = GateMatrix::identity(8);
#endif
    for (const auto& g : w) {
        if (g == "H2") {
            nf.h_exp ^= 1;
        } else if (nf.h_exp == 0) {
            nf.body.push_back(g);
        } else {
            const Word& p = h_conjugate(g);
            nf.body.insert(nf.body.end(), p.begin(), p.end());
        }
#ifdef TOFH_CHECK_STEPS
        prefix = mat_mul(prefix, gate_matrix(g));
        if (g != "H2") body = mat_mul(body, word_matrix(nf.h_exp ? h_conjugate(g) : Word{g}));
        if (prefix != (nf.h_exp ? mat_mul(body, h) : body))
            throw std::logic_error("normalize_h: semantics changed at symbol " + g);
#endif
    }
    return nf;
}

Word recombine(const NormalForm& nf) {
    Word w = nf.body;
    if (nf.h_exp) w.push_back("H2");
    return w;
}

EqVerdict circuits_equal(const Word& w1, const Word& w2) {
    EqVerdict v;
    GateMatrix a = word_matrix(w1), b = word_matrix(w2);
    if (a == b) {
        v.equal = true;
        int l1 = normalize_h(w1).h_exp, l2 = normalize_h(w2).h_exp;
        if (l1 != l2) throw std::logic_error("circuits_equal: equal matrices but different h exponents");
        v.h_exp = l1;
        return v;
    }
    for (std::size_t c = 0; c < a.dim() && !v.witness_column; ++c)
        for (std::size_t r = 0; r < a.dim(); ++r)
            if (!(a.at(r, c) == b.at(r, c))) {
                v.witness_column = c;
                break;
            }
    return v;
}

ToffoliReport toffoli_report(const Word& w) {
    ToffoliReport r;
    r.count = static_cast<std::size_t>(
        std::count_if(w.begin(), w.end(), [](const std::string& s) { return s.rfind("CCX", 0) == 0; }));
    r.within_bound = r.count <= kToffoliBound;
    return r;
}

std::optional<GateMatrix> minimality_witness(const std::vector<GateMatrix>& sub, const std::vector<GateMatrix>& full,
                                             const MinimalityOptions& opt) {
    std::vector<GateMatrix> rest;
    for (const auto& g : full)
        if (std::none_of(sub.begin(), sub.end(), [&](const GateMatrix& s) { return s == g; })) rest.push_back(g);
    if (rest.empty()) return std::nullopt;
    auto basis = commutant_basis(sub);
    auto accept = [&](const GateMatrix& m) {
        for (const auto& s : sub)
            if (!commutes(m, s)) return false;
        return std::any_of(rest.begin(), rest.end(), [&](const GateMatrix& g) { return !commutes(m, g); });
    };
    for (const auto& b : basis)
        if (accept(b)) return b;
    if (opt.max_terms < 2) return std::nullopt;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            for (int x = -opt.coeff_bound; x <= opt.coeff_bound; ++x)
                for (int y = -opt.coeff_bound; y <= opt.coeff_bound; ++y) {
                    if (x == 0 || y == 0) continue;
                    GateMatrix m = mat_add(mat_scale(basis[i], dyadic(x, 0)), mat_scale(basis[j], dyadic(y, 0)));
                    if (accept(m)) return m;
                }
    return std::nullopt;
}

ProbeResult finite_subgroup_probe(const std::vector<GateMatrix>& gens, std::size_t cap) {
    ProbeResult res;
    if (gens.empty()) {
        res.order = 1;
        return res;
    }
    std::vector<PackedMat> g;
    for (const auto& m : gens) g.push_back(pack(m));
    std::unordered_set<PackedMat, PackedMatHash> seen;
    std::deque<PackedMat> queue;
    PackedMat id = PackedMat::identity(static_cast<int>(gens.front().dim()));
    seen.insert(id);
    queue.push_back(id);
    while (!queue.empty()) {
        PackedMat cur = queue.front();
        queue.pop_front();
        for (const auto& x : g) {
            PackedMat n = packed_mul(cur, x);
            if (seen.insert(n).second) {
                if (seen.size() > cap) {
                    res.exceeded_cap = true;
                    res.order = seen.size();
                    return res;
                }
                queue.push_back(n);
            }
        }
    }
    res.order = seen.size();
    return res;
}

GateMatrix witness_N() {
    std::vector<long> e(64, 0);
    const long blk[4][4] = {{4, 2, 2, 0}, {2, 1, 1, 0}, {2, 1, 1, 0}, {0, 0, 0, 0}};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) e[r * 8 + c] = blk[r][c];
    return GateMatrix::from_ints(8, e);
}

GateMatrix witness_L() {
    std::vector<long> e(64, 0);
    const long blk[4][4] = {{1, 2, 2, 0}, {2, 0, -1, 0}, {2, -1, 0, 0}, {0, 0, 0, -3}};
    for (int o : {0, 4})
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) e[(o + r) * 8 + o + c] = blk[r][c];
    return GateMatrix::from_ints(8, e);
}

}  // namespace tofh
