#include "tofh/tietze.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace tofh {

namespace {

bool mentions(const Relation& r, const std::string& x) {
    return std::find(r.lhs.begin(), r.lhs.end(), x) != r.lhs.end() ||
           std::find(r.rhs.begin(), r.rhs.end(), x) != r.rhs.end();
}

bool is_definition_of(const Relation& r, const std::string& x) {
    return r.lhs.size() == 1 && r.lhs[0] == x && std::find(r.rhs.begin(), r.rhs.end(), x) == r.rhs.end();
}

void check_over(const Presentation& p, const Word& w, const std::string& what) {
    for (const auto& s : w)
        if (!p.has_symbol(s)) throw TietzeError(what + " uses undeclared symbol '" + s + "'");
}

std::vector<RewriteStep> inverse_steps(const std::vector<RewriteStep>& steps) {
    std::vector<RewriteStep> out;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) out.push_back({it->relation_id, it->position, flip(it->direction)});
    return out;
}

const Relation& defining_relation(const Presentation& p, const std::string& x, const std::string& rel_id) {
    if (!p.has_symbol(x)) throw TietzeError("gen-: symbol '" + x + "' is not a generator");
    std::vector<const Relation*> defs, others;
    for (const auto& r : p.relations) {
        if (!mentions(r, x)) continue;
        bool chosen = rel_id.empty() ? is_definition_of(r, x) : r.id == rel_id;
        (chosen ? defs : others).push_back(&r);
    }
    if (!rel_id.empty() && defs.empty()) throw TietzeError("gen-: relation '" + rel_id + "' does not mention " + x);
    if (defs.empty()) throw TietzeError("gen-: no defining relation " + x + " = w");
    if (defs.size() > 1) {
        std::string ids;
        for (auto* r : defs) ids += (ids.empty() ? "" : ", ") + r->id;
        throw TietzeError("gen-: ambiguous defining relations for " + x + " (" + ids + "); select one by id");
    }
    if (!is_definition_of(*defs[0], x))
        throw TietzeError("gen-: relation " + defs[0]->id + " is not of the form " + x + " = w with " + x + " not in w");
    if (!others.empty()) throw TietzeError("gen-: " + x + " also occurs in relation " + others[0]->id);
    return *defs[0];
}

}  // namespace

std::string format_move(const TietzeMove& m) {
    auto via = [&] {
        if (m.justification.kind == Justification::Kind::SemanticInjective) return std::string(" via semantic");
        std::string s = " via steps";
        for (std::size_t i = 0; i < m.justification.steps.size(); ++i)
            s += (i ? "; " : " ") + format_step(m.justification.steps[i]);
        return s;
    };
    switch (m.kind) {
        case MoveKind::GenPlus: return "gen+ " + m.symbol + " = " + format_word(m.definition);
        case MoveKind::GenMinus: return "gen- " + m.symbol;
        case MoveKind::RelPlus: return "rel+ " + format_relation(m.relation) + via();
        case MoveKind::RelMinus: return "rel- " + m.relation.id + via();
    }
    return "?";
}

Presentation gen_plus(const Presentation& p, const std::string& x, const Word& w, const std::string& rel_id) {
    if (x.empty() || x == "." || x.find_first_of(" \t") != std::string::npos)
        throw TietzeError("gen+: invalid symbol name '" + x + "'");
    if (p.has_symbol(x)) throw TietzeError("gen+: symbol '" + x + "' already present");
    check_over(p, w, "gen+ definition of " + x);
    std::string id = rel_id.empty() ? "def." + x : rel_id;
    if (p.find(id)) throw TietzeError("gen+: relation id '" + id + "' already used");
    Presentation q = p;
    q.alphabet.push_back(x);
    q.relations.push_back(Relation{id, {x}, w});
    if (p.interp) q.interp = extend_interp(*p.interp, x, w);
    return q;
}

Presentation gen_minus(const Presentation& p, const std::string& x, const std::string& rel_id) {
    const Relation& def = defining_relation(p, x, rel_id);
    std::string id = def.id;
    Presentation q = p;
    q.alphabet.erase(std::find(q.alphabet.begin(), q.alphabet.end(), x));
    q.relations.erase(std::find_if(q.relations.begin(), q.relations.end(), [&](const Relation& r) { return r.id == id; }));
    if (p.interp && p.interp->has(x)) q.interp = restrict_interp(*p.interp, x);
    return q;
}

Presentation rel_plus(const Presentation& p, const Relation& r, const Justification& just) {
    if (r.id.empty()) throw TietzeError("rel+: empty relation id");
    if (p.find(r.id)) throw TietzeError("rel+: relation id '" + r.id + "' already used");
    check_over(p, r.lhs, "rel+ " + r.id);
    check_over(p, r.rhs, "rel+ " + r.id);
    if (just.kind == Justification::Kind::SemanticInjective) {
        if (!p.interp) throw TietzeError("rel+ " + r.id + ": semantic justification needs an interpretation");
        if (!p.interp->injective)
            throw TietzeError("rel+ " + r.id + ": semantic justification needs an interpretation flagged injective");
        if (!relation_sound(r, *p.interp)) throw TietzeError("rel+ " + r.id + ": relation is not semantically sound");
    } else {
        Word end;
        try {
            end = replay(r.lhs, just.steps, p.relations);
        } catch (const std::invalid_argument& e) {
            throw TietzeError("rel+ " + r.id + ": justification fails at " + e.what());
        }
        if (end != r.rhs)
            throw TietzeError("rel+ " + r.id + ": justification ends at '" + format_word(end) + "', not '" +
                              format_word(r.rhs) + "'");
    }
    Presentation q = p;
    q.relations.push_back(r);
    return q;
}

Presentation rel_minus(const Presentation& p, const std::string& id, const Justification& just) {
    const Relation* r = p.find(id);
    if (!r) throw TietzeError("rel-: unknown relation id '" + id + "'");
    if (just.kind == Justification::Kind::SemanticInjective)
        throw TietzeError("rel- " + id + ": removal needs a derivation over the remaining relations");
    Presentation q = p;
    q.relations.erase(std::find_if(q.relations.begin(), q.relations.end(), [&](const Relation& x) { return x.id == id; }));
    Word end;
    try {
        end = replay(r->lhs, just.steps, q.relations);
    } catch (const std::invalid_argument& e) {
        throw TietzeError("rel- " + id + ": justification fails at " + e.what());
    }
    if (end != r->rhs)
        throw TietzeError("rel- " + id + ": justification ends at '" + format_word(end) + "', not '" +
                          format_word(r->rhs) + "'");
    return q;
}

Presentation apply_move(const Presentation& p, const TietzeMove& m) {
    switch (m.kind) {
        case MoveKind::GenPlus: return gen_plus(p, m.symbol, m.definition, m.relation.id);
        case MoveKind::GenMinus: return gen_minus(p, m.symbol, m.relation.id);
        case MoveKind::RelPlus: return rel_plus(p, m.relation, m.justification);
        case MoveKind::RelMinus: return rel_minus(p, m.relation.id, m.justification);
    }
    throw TietzeError("unknown move kind");
}

TietzeMove inverse_move(const TietzeMove& m) {
    TietzeMove inv = m;
    switch (m.kind) {
        case MoveKind::GenPlus: inv.kind = MoveKind::GenMinus; break;
        case MoveKind::GenMinus:
            inv.kind = MoveKind::GenPlus;
            inv.definition = m.relation.rhs;
            break;
        case MoveKind::RelPlus: inv.kind = MoveKind::RelMinus; break;
        case MoveKind::RelMinus: inv.kind = MoveKind::RelPlus; break;
    }
    return inv;
}

const Presentation& Journal::apply(const TietzeMove& m) {
    TietzeMove full = m;
    // record the removed relation so the move can be inverted later
    if (m.kind == MoveKind::GenMinus) full.relation = defining_relation(current_, m.symbol, m.relation.id);
    if (m.kind == MoveKind::RelMinus) {
        if (const Relation* r = current_.find(m.relation.id)) full.relation = *r;
    }
    if (m.kind == MoveKind::GenPlus) {
        full.relation.lhs = {m.symbol};
        full.relation.rhs = m.definition;
        if (full.relation.id.empty()) full.relation.id = "def." + m.symbol;
    }
    current_ = apply_move(current_, full);
    moves_.push_back(full);
    return current_;
}

bool induced_hom_check(const Interpretation& i, const Presentation& p) {
    for (const auto& s : p.alphabet)
        if (!i.has(s)) throw std::invalid_argument("induced_hom_check: no image for '" + s + "'");
    for (const auto& r : p.relations)
        if (!relation_sound(r, i)) return false;
    return true;
}

Interpretation extend_interp(const Interpretation& i, const std::string& x, const Word& w) {
    if (i.has(x)) throw std::invalid_argument("extend_interp: '" + x + "' already has an image");
    Interpretation out = i;
    out.images.emplace(x, interp_word(i, w));
    out.alphabet.push_back(x);
    return out;
}

Interpretation restrict_interp(const Interpretation& i, const std::string& x) {
    if (!i.has(x)) throw std::invalid_argument("restrict_interp: '" + x + "' has no image");
    Interpretation out = i;
    out.images.erase(x);
    out.alphabet.erase(std::remove(out.alphabet.begin(), out.alphabet.end(), x), out.alphabet.end());
    return out;
}

const Word* DefiningFamily::find(const std::string& x) const {
    for (const auto& [s, w] : defs)
        if (s == x) return &w;
    return nullptr;
}

DefiningFamily defining_family(const RelationSet& rels) {
    DefiningFamily d;
    for (const auto& r : rels)
        if (r.lhs.size() == 1 && is_definition_of(r, r.lhs[0]) && !d.contains(r.lhs[0])) d.defs.emplace_back(r.lhs[0], r.rhs);
    return d;
}

bool Digraph::has_edge(const std::string& a, const std::string& b) const {
    return std::find(edges.begin(), edges.end(), std::make_pair(a, b)) != edges.end();
}

std::vector<std::string> Digraph::successors(const std::string& v) const {
    std::vector<std::string> out;
    for (const auto& [a, b] : edges)
        if (a == v) out.push_back(b);
    return out;
}

std::optional<std::vector<std::string>> Digraph::find_cycle() const {
    std::map<std::string, int> color;  // 0 white, 1 on stack, 2 done
    std::vector<std::string> stack;
    std::optional<std::vector<std::string>> found;
    std::function<void(const std::string&)> dfs = [&](const std::string& v) {
        color[v] = 1;
        stack.push_back(v);
        for (const auto& w : successors(v)) {
            if (found) return;
            if (color[w] == 1) {
                auto it = std::find(stack.begin(), stack.end(), w);
                std::vector<std::string> cyc(it, stack.end());
                cyc.push_back(w);
                found = cyc;
                return;
            }
            if (color[w] == 0) dfs(w);
        }
        stack.pop_back();
        color[v] = 2;
    };
    for (const auto& v : vertices) {
        if (found) break;
        if (color[v] == 0) dfs(v);
    }
    return found;
}

Digraph dgen_graph(const DefiningFamily& D) {
    Digraph g;
    for (const auto& [x, w] : D.defs) g.vertices.push_back(x);
    for (const auto& [x, w] : D.defs)
        for (const auto& y : w)
            if (D.contains(y) && !g.has_edge(x, y)) g.edges.emplace_back(x, y);
    return g;
}

std::vector<std::string> dgen_intro_order(const DefiningFamily& D) {
    Digraph g = dgen_graph(D);
    if (auto cyc = g.find_cycle()) {
        std::string s;
        for (std::size_t i = 0; i < cyc->size(); ++i) s += (i ? " -> " : "") + (*cyc)[i];
        throw TietzeError("derived generator graph has a cycle: " + s);
    }
    std::vector<std::string> order;
    std::set<std::string> placed;
    while (order.size() < g.vertices.size()) {
        for (const auto& v : g.vertices) {
            if (placed.count(v)) continue;
            auto succ = g.successors(v);
            if (std::all_of(succ.begin(), succ.end(), [&](const std::string& s) { return placed.count(s) != 0; })) {
                order.push_back(v);
                placed.insert(v);
                break;
            }
        }
    }
    return order;
}

Elimination dgen_eliminate(const Presentation& p, const DefiningFamily& D) {
    auto order = dgen_intro_order(D);
    std::map<std::string, std::string> def_id;
    for (const auto& [x, w] : D.defs) {
        const Relation* found = nullptr;
        for (const auto& r : p.relations)
            if (r.lhs == Word{x} && r.rhs == w) {
                found = &r;
                break;
            }
        if (!found) throw TietzeError("dgen_eliminate: presentation has no relation " + x + " = " + format_word(w));
        def_id[x] = found->id;
    }
    std::set<std::string> def_ids;
    for (const auto& [x, id] : def_id) def_ids.insert(id);

    auto substitute = [&](Word w, std::vector<RewriteStep>& steps) {
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const Word& body = *D.find(*it);
            while (true) {
                auto pos = std::find(w.begin(), w.end(), *it);
                if (pos == w.end()) break;
                std::size_t at = static_cast<std::size_t>(pos - w.begin());
                steps.push_back({def_id[*it], at, Direction::Forward});
                w.erase(pos);
                w.insert(w.begin() + at, body.begin(), body.end());
            }
        }
        return w;
    };

    Journal j(p);
    const RelationSet original = p.relations;
    for (const auto& r : original) {
        if (def_ids.count(r.id)) continue;
        std::vector<RewriteStep> sl, sr;
        Word l = substitute(r.lhs, sl), rr = substitute(r.rhs, sr);
        if (sl.empty() && sr.empty()) continue;
        std::string id = r.id + ".sub";
        while (j.current().find(id)) id += "'";
        Relation next{id, l, rr};

        std::vector<RewriteStep> plus = inverse_steps(sl);
        plus.push_back({r.id, 0, Direction::Forward});
        plus.insert(plus.end(), sr.begin(), sr.end());
        j.apply(TietzeMove{MoveKind::RelPlus, "", {}, next, Justification::by_steps(plus)});

        std::vector<RewriteStep> minus = sl;
        minus.push_back({id, 0, Direction::Forward});
        auto back = inverse_steps(sr);
        minus.insert(minus.end(), back.begin(), back.end());
        j.apply(TietzeMove{MoveKind::RelMinus, "", {}, Relation{r.id, {}, {}}, Justification::by_steps(minus)});
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        j.apply(TietzeMove{MoveKind::GenMinus, *it, {}, Relation{def_id[*it], {}, {}}, {}});
    return {j.current(), j.moves()};
}

Presentation undo_moves(const Presentation& p, const std::vector<TietzeMove>& moves) {
    Presentation cur = p;
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) cur = apply_move(cur, inverse_move(*it));
    return cur;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<RewriteStep> parse_inline_steps(const std::string& text) {
    std::vector<RewriteStep> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        part = trim(part);
        if (part.empty()) continue;
        std::istringstream in(part);
        std::string kw, id, at, dir;
        long pos = -1;
        if (!(in >> kw >> id >> at >> pos >> dir) || kw != "rel" || at != "at" || pos < 0 || (dir != "fwd" && dir != "rev"))
            throw TietzeError("bad inline step '" + part + "' (expected 'rel <id> at <pos> fwd|rev')");
        out.push_back({id, static_cast<std::size_t>(pos), dir == "fwd" ? Direction::Forward : Direction::Reverse});
    }
    return out;
}

MoveScript parse_move_script(const std::string& text) {
    MoveScript s;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto split_via = [](const std::string& body, std::string& via) {
        auto k = body.rfind(" via ");
        if (k == std::string::npos) return body;
        via = trim(body.substr(k + 5));
        return trim(body.substr(0, k));
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto where = "line " + std::to_string(lineno) + ": ";
        if (line.front() == '[') {
            const std::string pre = "[moves over ";
            if (line.rfind(pre, 0) != 0 || line.back() != ']') throw TietzeError(where + "bad header '" + line + "'");
            s.presentation_file = trim(line.substr(pre.size(), line.size() - pre.size() - 1));
            continue;
        }
        std::istringstream words(line);
        std::string kw;
        words >> kw;
        std::string rest = trim(line.substr(kw.size()));
        ScriptLine sl;
        sl.lineno = lineno;
        if (kw == "interp") {
            auto w = parse_word(rest);
            if (w.empty() || w[0] != "standard") throw TietzeError(where + "only 'interp standard' is supported");
            s.standard_interp = true;
            s.injective = w.size() > 1 && w[1] == "injective";
            continue;
        }
        if (kw == "proof") {
            s.proof_files.push_back(rest);
            continue;
        }
        if (kw == "gen+") {
            auto eq = rest.find('=');
            if (eq == std::string::npos) throw TietzeError(where + "expected 'gen+ x = w'");
            sl.kind = MoveKind::GenPlus;
            sl.symbol = trim(rest.substr(0, eq));
            sl.definition = parse_word(rest.substr(eq + 1));
        } else if (kw == "gen-") {
            sl.kind = MoveKind::GenMinus;
            sl.symbol = rest;
        } else if (kw == "rel+") {
            std::string body = split_via(rest, sl.via);
            auto colon = body.find(':');
            auto eq = body.find('=', colon == std::string::npos ? 0 : colon);
            if (colon == std::string::npos || eq == std::string::npos)
                throw TietzeError(where + "expected 'rel+ id: lhs = rhs via <ref>'");
            sl.kind = MoveKind::RelPlus;
            sl.relation = Relation{trim(body.substr(0, colon)), parse_word(body.substr(colon + 1, eq - colon - 1)),
                                   parse_word(body.substr(eq + 1))};
        } else if (kw == "rel-") {
            sl.kind = MoveKind::RelMinus;
            sl.relation.id = split_via(rest, sl.via);
        } else {
            throw TietzeError(where + "unknown directive '" + kw + "'");
        }
        if ((sl.kind == MoveKind::RelPlus || sl.kind == MoveKind::RelMinus) && sl.via.empty())
            throw TietzeError(where + "missing 'via <ref>'");
        s.lines.push_back(std::move(sl));
    }
    return s;
}

Journal run_move_script(const MoveScript& script, const Presentation& start, const ProofRefResolver& resolver) {
    Journal j(start);
    for (const auto& sl : script.lines) {
        auto where = "line " + std::to_string(sl.lineno) + ": ";
        try {
            TietzeMove m;
            m.kind = sl.kind;
            m.symbol = sl.symbol;
            m.definition = sl.definition;
            m.relation = sl.relation;
            if (sl.kind == MoveKind::RelMinus) {
                const Relation* r = j.current().find(sl.relation.id);
                if (!r) throw TietzeError("rel-: unknown relation id '" + sl.relation.id + "'");
                m.relation = *r;
            }
            if (sl.kind == MoveKind::RelPlus || sl.kind == MoveKind::RelMinus) {
                if (sl.via == "semantic") {
                    m.justification = Justification::semantic();
                } else if (sl.via.rfind("steps", 0) == 0) {
                    m.justification = Justification::by_steps(parse_inline_steps(sl.via.substr(5)));
                } else {
                    if (!resolver) throw TietzeError("no proof available to resolve '" + sl.via + "'");
                    m.justification = Justification::by_steps(resolver(sl.via, m.relation));
                }
            }
            j.apply(m);
        } catch (const std::invalid_argument& e) {
            throw TietzeError(where + e.what());
        }
    }
    return j;
}

}  // namespace tofh
