#pragma once

#include "tofh/gates.hpp"
#include "tofh/word.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tofh {

struct Relation {
    std::string id;
    Word lhs;
    Word rhs;

    bool operator==(const Relation& o) const { return id == o.id && lhs == o.lhs && rhs == o.rhs; }
};

using RelationSet = std::vector<Relation>;

struct Presentation {
    std::vector<std::string> alphabet;
    RelationSet relations;
    std::optional<Interpretation> interp;

    bool has_symbol(const std::string& s) const;
    const Relation* find(const std::string& id) const;
};

// Resolves a builtin table name to a presentation (used by "[include]" sections).
using TableResolver = std::function<Presentation(const std::string&)>;

Presentation parse_presentation(const std::string& text, const TableResolver& resolver = {});
Presentation load_presentation(const std::string& path, const TableResolver& resolver = {});
std::string format_presentation(const Presentation& p);
std::string format_relation(const Relation& r);

// Union of generators and relations; later duplicates of an id must agree.
Presentation merge(const Presentation& a, const Presentation& b);
// Alphabet in first-appearance order over the relations.
std::vector<std::string> alphabet_of(const RelationSet& rels);

enum class Direction { Forward, Reverse };

struct RewriteStep {
    std::string relation_id;
    std::size_t position = 0;
    Direction direction = Direction::Forward;

    bool operator==(const RewriteStep& o) const {
        return relation_id == o.relation_id && position == o.position && direction == o.direction;
    }
};

Direction flip(Direction d);
std::string format_step(const RewriteStep& s);

// Side removed by a step, and side inserted.
const Word& matched_side(const Relation& r, Direction d);
const Word& inserted_side(const Relation& r, Direction d);

Word apply_step(const Word& w, const RewriteStep& step, const RelationSet& R);
// Replays steps; throws std::invalid_argument naming the failing step (1-based).
Word replay(const Word& w, const std::vector<RewriteStep>& steps, const RelationSet& R);
std::vector<RewriteStep> find_matches(const Word& w, const RelationSet& R);

struct SearchOptions {
    std::size_t max_steps = 12;
    std::size_t max_width = 200000;
    // words may grow this far beyond max(|u|, |v|)
    std::size_t slack = 6;
};

struct SearchStats {
    std::size_t expanded = 0;
    std::size_t visited = 0;
    bool truncated = false;
};

std::optional<std::vector<RewriteStep>> derive_search(const Word& u, const Word& v, const RelationSet& R,
                                                      const SearchOptions& opt = {}, SearchStats* stats = nullptr);

bool relation_sound(const Relation& rel, const Interpretation& i);

}  // namespace tofh
