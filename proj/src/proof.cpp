#include "tofh/proof.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tofh {

const Derivation* Proof::find(const std::string& name) const {
    for (const auto& d : derivations)
        if (d.label.name == name) return &d;
    return nullptr;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

Proof parse_proof(const std::string& text, const Presentation& base) {
    Proof p;
    p.base = base;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::set<std::string> names;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto where = "line " + std::to_string(lineno) + ": ";
        if (line.front() == '[') {
            const std::string pre = "[proof over ";
            if (line.rfind(pre, 0) != 0 || line.back() != ']') throw std::invalid_argument(where + "bad header '" + line + "'");
            p.presentation_file = trim(line.substr(pre.size(), line.size() - pre.size() - 1));
            continue;
        }
        std::istringstream ws(line);
        std::string kw;
        ws >> kw;
        if (kw == "lemma") {
            // lemma <name> (<index>): lhs = rhs
            auto open = line.find('('), close = line.find(')'), colon = line.find(':', close == std::string::npos ? 0 : close);
            if (open == std::string::npos || close == std::string::npos || colon == std::string::npos || close < open)
                throw std::invalid_argument(where + "expected 'lemma <name> (<index>): lhs = rhs'");
            auto eq = line.find('=', colon);
            if (eq == std::string::npos) throw std::invalid_argument(where + "claim needs '='");
            Derivation d;
            d.label.name = trim(line.substr(5, open - 5));
            if (d.label.name.empty()) throw std::invalid_argument(where + "lemma without a name");
            if (!names.insert(d.label.name).second)
                throw std::invalid_argument(where + "lemma name '" + d.label.name + "' used twice");
            std::string idx = trim(line.substr(open + 1, close - open - 1));
            if (idx.empty() || !std::all_of(idx.begin(), idx.end(), ::isdigit))
                throw std::invalid_argument(where + "lemma index must be a natural number");
            d.label.index = std::stoul(idx);
            d.label.lhs = parse_word(line.substr(colon + 1, eq - colon - 1));
            d.label.rhs = parse_word(line.substr(eq + 1));
            p.derivations.push_back(std::move(d));
            continue;
        }
        if (kw == "rel" || kw == "use") {
            if (p.derivations.empty()) throw std::invalid_argument(where + "step outside a lemma");
            ProofStep s;
            s.kind = kw == "rel" ? ProofStep::Kind::Rel : ProofStep::Kind::Use;
            s.lineno = lineno;
            std::vector<std::string> toks;
            for (std::string t; ws >> t;) toks.push_back(t);
            if (toks.size() == 4 && toks[1] == "at") {
                if (!std::all_of(toks[2].begin(), toks[2].end(), ::isdigit) || toks[2].empty())
                    throw std::invalid_argument(where + "position must be a natural number");
                s.position = std::stoul(toks[2]);
            } else if (toks.size() != 2) {
                throw std::invalid_argument(where + "expected '" + kw + " <ref> [at <pos>] fwd|rev'");
            }
            s.ref = toks[0];
            const std::string& dir = toks.back();
            if (dir != "fwd" && dir != "rev") throw std::invalid_argument(where + "direction must be fwd or rev");
            s.direction = dir == "fwd" ? Direction::Forward : Direction::Reverse;
            p.derivations.back().steps.push_back(std::move(s));
            continue;
        }
        throw std::invalid_argument(where + "unexpected '" + kw + "'");
    }
    return p;
}

Proof load_proof(const std::string& path, const TableResolver& resolver) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open proof file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    Proof header = parse_proof(ss.str(), Presentation{});
    if (header.presentation_file.empty()) throw std::invalid_argument(path + ": missing '[proof over <file>]' header");
    auto pres = std::filesystem::path(path).parent_path() / header.presentation_file;
    header.base = load_presentation(pres.string(), resolver);
    return header;
}

std::string format_proof(const Proof& p) {
    std::string out = "[proof over " + p.presentation_file + "]\n";
    for (const auto& d : p.derivations) {
        out += "lemma " + d.label.name + " (" + std::to_string(d.label.index) + "): " + format_word(d.label.lhs) + " = " +
               format_word(d.label.rhs) + "\n";
        for (const auto& s : d.steps) {
            out += "  ";
            out += s.kind == ProofStep::Kind::Rel ? "rel " : "use ";
            out += s.ref;
            if (s.position) out += " at " + std::to_string(*s.position);
            out += s.direction == Direction::Forward ? " fwd\n" : " rev\n";
        }
    }
    return out;
}

namespace {

// (matched, inserted) sides of a step, or nullopt for an unknown reference.
std::optional<std::pair<Word, Word>> step_sides(const Proof& p, const ProofStep& s) {
    Word l, r;
    if (s.kind == ProofStep::Kind::Rel) {
        const Relation* rel = p.base.find(s.ref);
        if (!rel) return std::nullopt;
        l = rel->lhs;
        r = rel->rhs;
    } else {
        const Derivation* d = p.find(s.ref);
        if (!d) return std::nullopt;
        l = d->label.lhs;
        r = d->label.rhs;
    }
    if (s.direction == Direction::Reverse) std::swap(l, r);
    return std::make_pair(l, r);
}

bool occurs_at(const Word& w, std::size_t pos, const Word& side) {
    return pos <= w.size() && side.size() <= w.size() - pos && std::equal(side.begin(), side.end(), w.begin() + pos);
}

struct Replay {
    bool ok = true;
    std::string message;
    std::vector<std::string> notes;
    std::vector<ProofStep> resolved;
    Word end;
};

Replay replay_derivation(const Proof& p, const Derivation& d) {
    Replay out;
    Word cur = d.label.lhs;
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const ProofStep& s = d.steps[i];
        auto tag = "step " + std::to_string(i + 1) + " (" + (s.kind == ProofStep::Kind::Rel ? "rel " : "use ") + s.ref + ")";
        auto sides = step_sides(p, s);
        if (!sides) {
            out.ok = false;
            out.message = tag + ": unknown reference";
            return out;
        }
        const auto& [from, to] = *sides;
        std::size_t pos = 0;
        if (s.position) {
            pos = *s.position;
            if (!occurs_at(cur, pos, from)) {
                out.ok = false;
                out.message = tag + ": '" + format_word(from) + "' does not occur at position " + std::to_string(pos) +
                              " of '" + format_word(cur) + "'";
                return out;
            }
        } else {
            std::vector<std::size_t> hits;
            for (std::size_t k = 0; k <= cur.size(); ++k)
                if (occurs_at(cur, k, from)) hits.push_back(k);
            if (hits.empty()) {
                out.ok = false;
                out.message = tag + ": '" + format_word(from) + "' does not occur in '" + format_word(cur) + "'";
                return out;
            }
            if (hits.size() > 1)
                out.notes.push_back(tag + ": " + std::to_string(hits.size()) + " matches, using leftmost position " +
                                    std::to_string(hits[0]));
            pos = hits[0];
        }
        Word next(cur.begin(), cur.begin() + pos);
        next.insert(next.end(), to.begin(), to.end());
        next.insert(next.end(), cur.begin() + pos + from.size(), cur.end());
        cur = std::move(next);
        ProofStep r = s;
        r.position = pos;
        out.resolved.push_back(r);
    }
    out.end = cur;
    if (cur != d.label.rhs) {
        out.ok = false;
        out.message = "derivation ends at '" + format_word(cur) + "', expected '" + format_word(d.label.rhs) + "'";
    }
    return out;
}

}  // namespace

Digraph derivation_graph(const Proof& p) {
    Digraph g;
    for (const auto& d : p.derivations) g.vertices.push_back(d.label.name);
    for (const auto& d : p.derivations)
        for (const auto& s : d.steps)
            if (s.kind == ProofStep::Kind::Use && p.find(s.ref) && !g.has_edge(d.label.name, s.ref))
                g.edges.emplace_back(d.label.name, s.ref);
    return g;
}

ProofReport check_proof(const Proof& p) {
    ProofReport rep;
    std::set<std::tuple<std::size_t, Word, Word>> labels;
    for (const auto& d : p.derivations)
        if (!labels.insert({d.label.index, d.label.lhs, d.label.rhs}).second) rep.indexed = false;

    for (const auto& d : p.derivations) {
        DerivationReport dr;
        dr.name = d.label.name;
        for (const auto& s : d.steps) {
            bool known = s.kind == ProofStep::Kind::Rel ? p.base.find(s.ref) != nullptr : p.find(s.ref) != nullptr;
            if (!known) {
                dr.wellfounded = false;
                dr.notes.push_back("line " + std::to_string(s.lineno) + ": unknown " +
                                   (s.kind == ProofStep::Kind::Rel ? "relation '" : "lemma '") + s.ref + "'");
            }
        }
        auto r = replay_derivation(p, d);
        dr.valid = r.ok;
        dr.message = r.ok ? "ok" : r.message;
        dr.notes.insert(dr.notes.end(), r.notes.begin(), r.notes.end());
        rep.wellfounded = rep.wellfounded && dr.wellfounded;
        rep.valid = rep.valid && dr.valid;
        rep.derivations.push_back(std::move(dr));
    }
    if (auto cyc = derivation_graph(p).find_cycle()) {
        rep.acyclic = false;
        rep.cycle = *cyc;
    }
    return rep;
}

Proof resolve_positions(const Proof& p) {
    Proof out = p;
    for (auto& d : out.derivations) {
        auto r = replay_derivation(p, d);
        if (!r.ok) throw std::invalid_argument("derivation " + d.label.name + ": " + r.message);
        d.steps = r.resolved;
    }
    return out;
}

Proof inline_lemma(const Proof& p, const std::string& at, const std::string& lemma) {
    if (at == lemma) throw std::invalid_argument("inline_lemma: cannot inline " + lemma + " into itself");
    const Derivation* target = p.find(at);
    const Derivation* lem = p.find(lemma);
    if (!target) throw std::invalid_argument("inline_lemma: no derivation '" + at + "'");
    if (!lem) throw std::invalid_argument("inline_lemma: no derivation '" + lemma + "'");
    auto cites = [&](const Derivation& d, const std::string& name) {
        return std::any_of(d.steps.begin(), d.steps.end(),
                           [&](const ProofStep& s) { return s.kind == ProofStep::Kind::Use && s.ref == name; });
    };
    if (!cites(*target, lemma)) throw std::invalid_argument("inline_lemma: " + at + " does not cite " + lemma);
    for (const auto& s : lem->steps)
        if (s.kind == ProofStep::Kind::Use)
            throw std::invalid_argument("inline_lemma: " + lemma + " cites lemma " + s.ref + "; inline that first");

    Proof out = resolve_positions(p);
    const Derivation& lres = *out.find(lemma);
    std::vector<ProofStep> lsteps = lres.steps;
    for (auto& d : out.derivations) {
        if (d.label.name != at) continue;
        std::vector<ProofStep> steps;
        for (const auto& s : d.steps) {
            if (s.kind != ProofStep::Kind::Use || s.ref != lemma) {
                steps.push_back(s);
                continue;
            }
            std::size_t base = *s.position;
            if (s.direction == Direction::Forward) {
                for (const auto& ls : lsteps) {
                    ProofStep n = ls;
                    n.position = base + *ls.position;
                    n.lineno = s.lineno;
                    steps.push_back(n);
                }
            } else {
                for (auto it = lsteps.rbegin(); it != lsteps.rend(); ++it) {
                    ProofStep n = *it;
                    n.position = base + *it->position;
                    n.direction = flip(it->direction);
                    n.lineno = s.lineno;
                    steps.push_back(n);
                }
            }
        }
        d.steps = std::move(steps);
    }
    return out;
}

Proof flatten(const Proof& p) {
    auto rep = check_proof(p);
    if (!rep.acyclic) throw std::invalid_argument("flatten: derivation graph has a cycle");
    if (!rep.accepted()) throw std::invalid_argument("flatten: proof is not accepted");
    Digraph g = derivation_graph(p);
    // lemmas first: a derivation is processed after everything it cites
    std::vector<std::string> order;
    std::set<std::string> done;
    while (order.size() < g.vertices.size()) {
        for (const auto& v : g.vertices) {
            if (done.count(v)) continue;
            auto succ = g.successors(v);
            if (std::all_of(succ.begin(), succ.end(), [&](const std::string& s) { return done.count(s) != 0; })) {
                order.push_back(v);
                done.insert(v);
                break;
            }
        }
    }
    Proof cur = resolve_positions(p);
    for (const auto& v : order) {
        for (const auto& cited : g.successors(v)) cur = inline_lemma(cur, v, cited);
    }
    return cur;
}

std::vector<RewriteStep> flat_steps(const Proof& p, const std::string& name) {
    Proof f = flatten(p);
    const Derivation* d = f.find(name);
    if (!d) throw std::invalid_argument("no derivation '" + name + "'");
    std::vector<RewriteStep> out;
    for (const auto& s : d->steps) out.push_back({s.ref, *s.position, s.direction});
    return out;
}

std::vector<TietzeMove> to_relplus_moves(const Proof& p, const RelationSet& target) {
    Proof f = flatten(p);
    std::vector<TietzeMove> moves;
    for (const auto& t : target) {
        bool in_base = std::any_of(p.base.relations.begin(), p.base.relations.end(),
                                   [&](const Relation& r) { return r.lhs == t.lhs && r.rhs == t.rhs; });
        if (in_base) continue;
        const Derivation* hit = nullptr;
        bool reversed = false;
        for (const auto& d : f.derivations) {
            if (d.label.lhs == t.lhs && d.label.rhs == t.rhs) {
                hit = &d;
                break;
            }
            if (!hit && d.label.lhs == t.rhs && d.label.rhs == t.lhs) {
                hit = &d;
                reversed = true;
            }
        }
        if (!hit) throw std::invalid_argument("relation " + t.id + " is neither a base relation nor a proven claim");
        std::vector<RewriteStep> steps;
        for (const auto& s : hit->steps) steps.push_back({s.ref, *s.position, s.direction});
        if (reversed) {
            std::vector<RewriteStep> inv;
            for (auto it = steps.rbegin(); it != steps.rend(); ++it) inv.push_back({it->relation_id, it->position, flip(it->direction)});
            steps = std::move(inv);
        }
        moves.push_back(TietzeMove{MoveKind::RelPlus, "", {}, t, Justification::by_steps(std::move(steps))});
    }
    return moves;
}

ProofRefResolver proof_resolver(std::vector<Proof> proofs) {
    auto shared = std::make_shared<std::vector<Proof>>(std::move(proofs));
    return [shared](const std::string& ref, const Relation& claim) -> std::vector<RewriteStep> {
        for (const auto& p : *shared) {
            const Derivation* d = p.find(ref);
            if (!d) continue;
            auto steps = flat_steps(p, ref);
            if (d->label.lhs == claim.lhs && d->label.rhs == claim.rhs) return steps;
            if (d->label.lhs == claim.rhs && d->label.rhs == claim.lhs) {
                std::vector<RewriteStep> inv;
                for (auto it = steps.rbegin(); it != steps.rend(); ++it)
                    inv.push_back({it->relation_id, it->position, flip(it->direction)});
                return inv;
            }
            throw TietzeError("lemma " + ref + " proves " + format_word(d->label.lhs) + " = " + format_word(d->label.rhs) +
                              ", not relation " + claim.id);
        }
        throw TietzeError("no lemma named '" + ref + "' in the loaded proofs");
    };
}

Journal run_script_file(const std::string& path, const TableResolver& tables) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open move script '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    MoveScript script = parse_move_script(ss.str());
    if (script.presentation_file.empty()) throw std::invalid_argument(path + ": missing '[moves over <file>]' header");
    auto dir = std::filesystem::path(path).parent_path();
    Presentation start = load_presentation((dir / script.presentation_file).string(), tables);
    if (script.standard_interp) {
        Interpretation i = standard_interpretation(start.alphabet);
        i.injective = script.injective;
        start.interp = i;
    }
    std::vector<Proof> proofs;
    for (const auto& pf : script.proof_files) proofs.push_back(load_proof((dir / pf).string(), tables));
    return run_move_script(script, start, proof_resolver(std::move(proofs)));
}

// ---- permutations ----

Permutation Permutation::identity(std::size_t n) {
    Permutation p;
    for (std::size_t i = 0; i < n; ++i) p.images.push_back(static_cast<int>(i));
    return p;
}

Permutation Permutation::parse(const std::string& text) {
    std::istringstream in(text);
    Permutation p;
    std::string tok;
    bool first = true;
    while (in >> tok) {
        if (first && tok == "perm") {
            first = false;
            continue;
        }
        first = false;
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit))
            throw std::invalid_argument("permutation entry '" + tok + "' is not a natural number");
        p.images.push_back(std::stoi(tok));
    }
    if (!p.is_bijection()) throw std::invalid_argument("permutation '" + text + "' is not a bijection");
    return p;
}

bool Permutation::is_bijection() const {
    std::vector<bool> seen(images.size(), false);
    for (int v : images) {
        if (v < 0 || static_cast<std::size_t>(v) >= images.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Permutation Permutation::inverse() const {
    Permutation r;
    r.images.assign(images.size(), 0);
    for (std::size_t i = 0; i < images.size(); ++i) r.images[images[i]] = static_cast<int>(i);
    return r;
}

Permutation Permutation::compose(const Permutation& o) const {
    Permutation r;
    for (std::size_t i = 0; i < o.images.size(); ++i) r.images.push_back(images.at(o.images[i]));
    return r;
}

namespace {

GateSymbol multilevel(const std::string& tok) {
    GateSymbol g = symbol(tok);
    if (!is_multilevel(g.kind)) throw std::invalid_argument("'" + tok + "' is not a multi-level operator");
    return g;
}

GateSymbol image(const Permutation& s, GateSymbol g) {
    for (int& a : g.params) {
        if (a < 0 || static_cast<std::size_t>(a) >= s.size())
            throw std::invalid_argument("level " + std::to_string(a) + " outside the permutation");
        a = s(a);
    }
    return g;
}

// Swap list of an insertion sort over positions `slots` of the image array;
// returns X words whose product (in order) has matrix P_s restricted there.
Word sort_word(std::vector<int> img, const std::vector<int>& slots) {
    // img[k] is the image slot index of slots[k]
    std::vector<std::pair<int, int>> swaps;
    for (std::size_t i = 1; i < img.size(); ++i)
        for (std::size_t j = i; j > 0 && img[j - 1] > img[j]; --j) {
            std::swap(img[j - 1], img[j]);
            swaps.emplace_back(slots[j - 1], slots[j]);
        }
    Word w;
    for (auto it = swaps.rbegin(); it != swaps.rend(); ++it)
        w.push_back("TLX[" + std::to_string(it->first) + "," + std::to_string(it->second) + "]");
    return w;
}

std::string tlx(int a, int b) { return "TLX[" + std::to_string(std::min(a, b)) + "," + std::to_string(std::max(a, b)) + "]"; }

}  // namespace

Word reindex_word(const Permutation& s, const Word& w) {
    Word out;
    for (const auto& t : w) out.push_back(symbol_name(image(s, multilevel(t))));
    return out;
}

bool reindex_valid(const Permutation& s, const Word& w) {
    if (!s.is_bijection()) return false;
    for (const auto& t : w)
        if (!well_formed(image(s, multilevel(t)), s.size())) return false;
    return true;
}

Word conjugation_witness(const Permutation& s, const std::string& g) {
    if (!s.is_bijection()) throw std::invalid_argument("conjugation_witness: not a permutation");
    GateSymbol sym = multilevel(g);
    const int n = static_cast<int>(s.size());
    if (!well_formed(sym, n)) throw std::invalid_argument("conjugation_witness: '" + g + "' is ill-formed");
    GateSymbol target = image(s, sym);
    if (!well_formed(target, n))
        throw std::invalid_argument("conjugation_witness: " + symbol_name(target) + " is not a valid reindexing of " + g);

    Word v;
    if (sym.kind != GateKind::FourLevelK) {
        std::vector<int> slots(n);
        for (int i = 0; i < n; ++i) slots[i] = i;
        v = sort_word(s.images, slots);
    } else {
        const auto& m = sym.params;
        const auto& t = target.params;
        Word w1, w2;
        // stage 1: m_i -> i
        for (int i = 3; i >= 0; --i)
            if (m[i] != i) w1.push_back(tlx(i, m[i]));
        Permutation p1 = Permutation::identity(n);
        for (int i = 0; i <= 3; ++i) {
            if (m[i] == i) continue;
            Permutation tr = Permutation::identity(n);
            std::swap(tr.images[i], tr.images[m[i]]);
            p1 = tr.compose(p1);
        }
        // stage 2: i -> t_i
        for (int i = 0; i <= 3; ++i)
            if (t[i] != i) w2.push_back(tlx(i, t[i]));
        Permutation p2 = Permutation::identity(n);
        for (int i = 3; i >= 0; --i) {
            if (t[i] == i) continue;
            Permutation tr = Permutation::identity(n);
            std::swap(tr.images[i], tr.images[t[i]]);
            p2 = tr.compose(p2);
        }
        // stage 3: what is left fixes every t_i
        Permutation p3 = s.compose(p2.compose(p1).inverse());
        std::vector<int> comp;
        for (int a = 0; a < n; ++a)
            if (std::find(t.begin(), t.end(), a) == t.end()) comp.push_back(a);
        std::vector<int> img;
        for (int a : comp) {
            int b = p3(a);
            img.push_back(static_cast<int>(std::find(comp.begin(), comp.end(), b) - comp.begin()));
        }
        v = sort_word(img, comp);
        v.insert(v.end(), w2.begin(), w2.end());
        v.insert(v.end(), w1.begin(), w1.end());
    }

    GateMatrix pv = word_matrix(v, n);
    if (pv != permutation_matrix(s.images))
        throw std::logic_error("conjugation_witness: witness does not realise the permutation");
    Word conj = v;
    conj.push_back(g);
    auto rv = formal_reverse(v);
    conj.insert(conj.end(), rv.begin(), rv.end());
    if (word_matrix(conj, n) != level_operator(target, n))
        throw std::logic_error("conjugation_witness: conjugate does not match " + symbol_name(target));
    return v;
}

}  // namespace tofh
