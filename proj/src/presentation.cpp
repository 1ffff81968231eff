#include "tofh/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace tofh {

bool Presentation::has_symbol(const std::string& s) const {
    return std::find(alphabet.begin(), alphabet.end(), s) != alphabet.end();
}

const Relation* Presentation::find(const std::string& id) const {
    for (const auto& r : relations)
        if (r.id == id) return &r;
    return nullptr;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void check_words(const Presentation& p) {
    std::set<std::string> ids;
    std::set<std::string> sigma(p.alphabet.begin(), p.alphabet.end());
    for (const auto& r : p.relations) {
        if (!ids.insert(r.id).second) throw std::invalid_argument("duplicate relation id '" + r.id + "'");
        for (const Word* w : {&r.lhs, &r.rhs})
            for (const auto& s : *w)
                if (!sigma.count(s))
                    throw std::invalid_argument("relation " + r.id + " uses undeclared symbol '" + s + "'");
    }
}

}  // namespace

Presentation parse_presentation(const std::string& text, const TableResolver& resolver) {
    Presentation p;
    std::istringstream in(text);
    std::string line;
    enum { None, Gens, Rels, Include } section = None;
    int lineno = 0;
    std::vector<Presentation> included;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line == "[generators]") {
            section = Gens;
            continue;
        }
        if (line == "[relations]") {
            section = Rels;
            continue;
        }
        if (line == "[include]") {
            section = Include;
            continue;
        }
        auto where = "line " + std::to_string(lineno) + ": ";
        switch (section) {
            case None: throw std::invalid_argument(where + "content before a section header");
            case Gens:
                for (const auto& t : parse_word(line))
                    if (!p.has_symbol(t)) p.alphabet.push_back(t);
                break;
            case Include:
                for (const auto& name : parse_word(line)) {
                    if (!resolver) throw std::invalid_argument(where + "no resolver for table '" + name + "'");
                    included.push_back(resolver(name));
                }
                break;
            case Rels: {
                auto colon = line.find(':');
                auto eq = line.find('=', colon == std::string::npos ? 0 : colon);
                if (colon == std::string::npos || eq == std::string::npos)
                    throw std::invalid_argument(where + "expected 'id: lhs = rhs'");
                Relation r;
                r.id = trim(line.substr(0, colon));
                if (r.id.empty()) throw std::invalid_argument(where + "empty relation id");
                r.lhs = parse_word(line.substr(colon + 1, eq - colon - 1));
                r.rhs = parse_word(line.substr(eq + 1));
                p.relations.push_back(std::move(r));
                break;
            }
        }
    }
    for (const auto& inc : included) p = merge(inc, p);
    check_words(p);
    return p;
}

Presentation load_presentation(const std::string& path, const TableResolver& resolver) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open presentation file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_presentation(ss.str(), resolver);
}

std::string format_relation(const Relation& r) { return r.id + ": " + format_word(r.lhs) + " = " + format_word(r.rhs); }

std::string format_presentation(const Presentation& p) {
    std::string out = "[generators]\n" + format_word(p.alphabet) + "\n[relations]\n";
    if (p.alphabet.empty()) out = "[generators]\n[relations]\n";
    for (const auto& r : p.relations) out += format_relation(r) + "\n";
    return out;
}

Presentation merge(const Presentation& a, const Presentation& b) {
    Presentation p = a;
    for (const auto& s : b.alphabet)
        if (!p.has_symbol(s)) p.alphabet.push_back(s);
    for (const auto& r : b.relations) {
        if (const Relation* old = p.find(r.id)) {
            if (!(*old == r)) throw std::invalid_argument("conflicting definitions of relation '" + r.id + "'");
            continue;
        }
        p.relations.push_back(r);
    }
    if (!p.interp && b.interp) p.interp = b.interp;
    return p;
}

std::vector<std::string> alphabet_of(const RelationSet& rels) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& r : rels)
        for (const Word* w : {&r.lhs, &r.rhs})
            for (const auto& s : *w)
                if (seen.insert(s).second) out.push_back(s);
    return out;
}

Direction flip(Direction d) { return d == Direction::Forward ? Direction::Reverse : Direction::Forward; }

std::string format_step(const RewriteStep& s) {
    return "rel " + s.relation_id + " at " + std::to_string(s.position) +
           (s.direction == Direction::Forward ? " fwd" : " rev");
}

const Word& matched_side(const Relation& r, Direction d) { return d == Direction::Forward ? r.lhs : r.rhs; }
const Word& inserted_side(const Relation& r, Direction d) { return d == Direction::Forward ? r.rhs : r.lhs; }

namespace {

const Relation& lookup(const RelationSet& R, const std::string& id) {
    for (const auto& r : R)
        if (r.id == id) return r;
    throw std::invalid_argument("unknown relation id '" + id + "'");
}

bool matches_at(const Word& w, std::size_t pos, const Word& side) {
    if (pos > w.size() || side.size() > w.size() - pos) return false;
    return std::equal(side.begin(), side.end(), w.begin() + pos);
}

}  // namespace

Word apply_step(const Word& w, const RewriteStep& step, const RelationSet& R) {
    const Relation& r = lookup(R, step.relation_id);
    const Word& from = matched_side(r, step.direction);
    const Word& to = inserted_side(r, step.direction);
    if (!matches_at(w, step.position, from))
        throw std::invalid_argument("relation " + r.id + " (" + (step.direction == Direction::Forward ? "fwd" : "rev") +
                                    ") does not match at position " + std::to_string(step.position) + " of '" +
                                    format_word(w) + "'");
    Word out(w.begin(), w.begin() + step.position);
    out.insert(out.end(), to.begin(), to.end());
    out.insert(out.end(), w.begin() + step.position + from.size(), w.end());
    return out;
}

Word replay(const Word& w, const std::vector<RewriteStep>& steps, const RelationSet& R) {
    Word cur = w;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        try {
            cur = apply_step(cur, steps[i], R);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("step " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return cur;
}

std::vector<RewriteStep> find_matches(const Word& w, const RelationSet& R) {
    std::vector<std::size_t> order(R.size());
    for (std::size_t i = 0; i < R.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return natural_less(R[a].id, R[b].id); });
    std::vector<RewriteStep> out;
    for (std::size_t pos = 0; pos <= w.size(); ++pos)
        for (std::size_t i : order)
            for (Direction d : {Direction::Forward, Direction::Reverse}) {
                const Word& side = matched_side(R[i], d);
                // a relation with equal sides would yield the same step twice
                if (d == Direction::Reverse && R[i].lhs == R[i].rhs) continue;
                if (matches_at(w, pos, side)) out.push_back({R[i].id, pos, d});
            }
    return out;
}

namespace {

using Code = std::u16string;

struct Rule {
    std::size_t rel;  // index into the id-sorted relation list
    Direction dir;
    Code from;
    Code to;
};

struct Parent {
    Code prev;
    std::size_t rule = 0;
    std::size_t pos = 0;
    bool root = true;
};

class Searcher {
public:
    Searcher(const RelationSet& R, const SearchOptions& opt) : opt_(opt) {
        order_.resize(R.size());
        for (std::size_t i = 0; i < R.size(); ++i) order_[i] = &R[i];
        std::sort(order_.begin(), order_.end(),
                  [](const Relation* a, const Relation* b) { return natural_less(a->id, b->id); });
        for (std::size_t i = 0; i < order_.size(); ++i)
            for (Direction d : {Direction::Forward, Direction::Reverse}) {
                if (d == Direction::Reverse && order_[i]->lhs == order_[i]->rhs) continue;
                Rule rule{i, d, encode(matched_side(*order_[i], d)), encode(inserted_side(*order_[i], d))};
                std::size_t idx = rules_.size();
                rules_.push_back(rule);
                if (rule.from.empty())
                    insertions_.push_back(idx);
                else
                    by_first_[rule.from[0]].push_back(idx);
            }
    }

    Code encode(const Word& w) {
        Code c;
        for (const auto& s : w) {
            auto it = ids_.find(s);
            if (it == ids_.end()) {
                it = ids_.emplace(s, static_cast<char16_t>(names_.size())).first;
                names_.push_back(s);
            }
            c.push_back(it->second);
        }
        return c;
    }

    // Neighbors in (position, relation id, direction) order.
    template <class F>
    void neighbors(const Code& w, std::size_t cap, F&& emit) {
        std::vector<std::size_t> cand;
        for (std::size_t pos = 0; pos <= w.size(); ++pos) {
            cand.clear();
            cand.insert(cand.end(), insertions_.begin(), insertions_.end());
            if (pos < w.size()) {
                auto it = by_first_.find(w[pos]);
                if (it != by_first_.end())
                    for (std::size_t r : it->second)
                        if (rules_[r].from.size() <= w.size() - pos &&
                            w.compare(pos, rules_[r].from.size(), rules_[r].from) == 0)
                            cand.push_back(r);
            }
            std::sort(cand.begin(), cand.end());
            for (std::size_t r : cand) {
                const Rule& rule = rules_[r];
                if (w.size() - rule.from.size() + rule.to.size() > cap) continue;
                Code next = w.substr(0, pos) + rule.to + w.substr(pos + rule.from.size());
                if (emit(next, r, pos)) return;
            }
        }
    }

    RewriteStep step(std::size_t rule, std::size_t pos, bool inverted) const {
        const Rule& r = rules_[rule];
        return {order_[r.rel]->id, pos, inverted ? flip(r.dir) : r.dir};
    }

    const SearchOptions& opt() const { return opt_; }

private:
    SearchOptions opt_;
    std::vector<const Relation*> order_;
    std::vector<Rule> rules_;
    std::vector<std::size_t> insertions_;
    std::unordered_map<char16_t, std::vector<std::size_t>> by_first_;
    std::unordered_map<std::string, char16_t> ids_;
    std::vector<std::string> names_;
};

}  // namespace

std::optional<std::vector<RewriteStep>> derive_search(const Word& u, const Word& v, const RelationSet& R,
                                                      const SearchOptions& opt, SearchStats* stats) {
    if (u == v) return std::vector<RewriteStep>{};
    Searcher s(R, opt);
    const std::size_t cap = std::max(u.size(), v.size()) + opt.slack;
    Code cu = s.encode(u), cv = s.encode(v);

    std::unordered_map<Code, Parent> seen[2];
    std::vector<Code> frontier[2] = {{cu}, {cv}};
    seen[0][cu] = Parent{};
    seen[1][cv] = Parent{};
    std::size_t depth[2] = {0, 0};
    SearchStats local;

    // path from a root of side `side` to w, as steps in the forward orientation of that side
    auto trace = [&](int side, Code w) {
        std::vector<std::pair<std::size_t, std::size_t>> rev;  // (rule, pos)
        while (true) {
            const Parent& p = seen[side].at(w);
            if (p.root) break;
            rev.emplace_back(p.rule, p.pos);
            w = p.prev;
        }
        return rev;
    };

    std::optional<std::vector<RewriteStep>> result;
    while (!result && depth[0] + depth[1] < opt.max_steps && !frontier[0].empty() && !frontier[1].empty()) {
        int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
        int other = 1 - side;
        std::vector<Code> next;
        for (const Code& w : frontier[side]) {
            ++local.expanded;
            s.neighbors(w, cap, [&](const Code& n, std::size_t rule, std::size_t pos) {
                if (seen[side].count(n)) return false;
                if (next.size() >= opt.max_width) {
                    local.truncated = true;
                    if (!seen[other].count(n)) return false;
                }
                seen[side][n] = Parent{w, rule, pos, false};
                if (seen[other].count(n)) {
                    // forward half: u -> n, backward half: n -> v
                    auto fwd = trace(0, n);
                    auto bwd = trace(1, n);
                    std::vector<RewriteStep> steps;
                    for (auto it = fwd.rbegin(); it != fwd.rend(); ++it) steps.push_back(s.step(it->first, it->second, false));
                    for (auto& [r, p] : bwd) steps.push_back(s.step(r, p, true));
                    result = std::move(steps);
                    return true;
                }
                next.push_back(n);
                return false;
            });
            if (result) break;
        }
        ++depth[side];
        frontier[side] = std::move(next);
    }
    local.visited = seen[0].size() + seen[1].size();
    if (stats) *stats = local;
    return result;
}

bool relation_sound(const Relation& rel, const Interpretation& i) {
    return interp_word(i, rel.lhs) == interp_word(i, rel.rhs);
}

}  // namespace tofh
