#pragma once

#include "tofh/presentation.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tofh {

struct TietzeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Justification {
    enum class Kind { Steps, SemanticInjective };
    Kind kind = Kind::Steps;
    // rewrites the relation's lhs into its rhs
    std::vector<RewriteStep> steps;

    static Justification semantic() { return {Kind::SemanticInjective, {}}; }
    static Justification by_steps(std::vector<RewriteStep> s) { return {Kind::Steps, std::move(s)}; }
};

enum class MoveKind { GenPlus, GenMinus, RelPlus, RelMinus };

struct TietzeMove {
    MoveKind kind = MoveKind::GenPlus;
    // Gen+/Gen-: the symbol; Gen+ also carries the definition and its relation id
    std::string symbol;
    Word definition;
    // Rel+: the relation added; Rel-: the relation removed; Gen+/Gen-: the defining relation
    Relation relation;
    Justification justification;
};

std::string format_move(const TietzeMove& m);

Presentation gen_plus(const Presentation& p, const std::string& x, const Word& w, const std::string& rel_id = "");
// Removes x and its defining relation. With rel_id empty the relation is found
// automatically; more than one candidate is an ambiguity error.
Presentation gen_minus(const Presentation& p, const std::string& x, const std::string& rel_id = "");
Presentation rel_plus(const Presentation& p, const Relation& r, const Justification& just);
Presentation rel_minus(const Presentation& p, const std::string& id, const Justification& just);

Presentation apply_move(const Presentation& p, const TietzeMove& m);
// The move undoing m when applied to apply_move(before, m).
TietzeMove inverse_move(const TietzeMove& m);

// Appends every accepted move; rejected moves leave it unchanged.
class Journal {
public:
    explicit Journal(Presentation start) : start_(std::move(start)), current_(start_) {}

    const Presentation& apply(const TietzeMove& m);
    const Presentation& start() const { return start_; }
    const Presentation& current() const { return current_; }
    const std::vector<TietzeMove>& moves() const { return moves_; }

private:
    Presentation start_;
    Presentation current_;
    std::vector<TietzeMove> moves_;
};

bool induced_hom_check(const Interpretation& i, const Presentation& p);
Interpretation extend_interp(const Interpretation& i, const std::string& x, const Word& w);
Interpretation restrict_interp(const Interpretation& i, const std::string& x);

struct DefiningFamily {
    // in declaration order
    std::vector<std::pair<std::string, Word>> defs;

    const Word* find(const std::string& x) const;
    bool contains(const std::string& x) const { return find(x) != nullptr; }
};

// Defining relations x = w of p whose lhs is a single symbol not used in w,
// the first for each symbol, in relation order.
DefiningFamily defining_family(const RelationSet& rels);

struct Digraph {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> edges;

    bool has_edge(const std::string& a, const std::string& b) const;
    std::vector<std::string> successors(const std::string& v) const;
    // A directed cycle v0 -> v1 -> ... -> v0 (first vertex repeated at the end), if any.
    std::optional<std::vector<std::string>> find_cycle() const;
};

Digraph dgen_graph(const DefiningFamily& D);
// Throws TietzeError with a cycle witness when the graph is cyclic.
std::vector<std::string> dgen_intro_order(const DefiningFamily& D);

struct Elimination {
    Presentation result;
    std::vector<TietzeMove> moves;
};

// Rewrites every non-defining relation over primitives, then removes the
// derived symbols. The moves replay from p to result.
Elimination dgen_eliminate(const Presentation& p, const DefiningFamily& D);

// Replays moves in reverse, each inverted.
Presentation undo_moves(const Presentation& p, const std::vector<TietzeMove>& moves);

// ---- move scripts ----

// Resolves "via <ref>" where ref is neither "semantic" nor inline steps.
using ProofRefResolver = std::function<std::vector<RewriteStep>(const std::string& ref, const Relation& claim)>;

struct ScriptLine {
    int lineno = 0;
    MoveKind kind = MoveKind::GenPlus;
    std::string symbol;   // gen+/gen-
    Word definition;      // gen+
    Relation relation;    // rel+ (full), rel- (id only)
    std::string via;      // rel+/rel-
};

struct MoveScript {
    std::string presentation_file;
    bool standard_interp = false;
    bool injective = false;
    std::vector<std::string> proof_files;
    std::vector<ScriptLine> lines;
};

// Lines: "[moves over <file>]", "interp standard [injective]", "proof <file>",
// "gen+ x = w", "gen- x", "rel+ id: lhs = rhs via <ref>", "rel- id via <ref>".
// <ref> is "semantic", "steps <step>; <step>; ...", or a name for the resolver.
MoveScript parse_move_script(const std::string& text);
std::vector<RewriteStep> parse_inline_steps(const std::string& text);

// Applies the script to start; throws TietzeError naming the failing line.
Journal run_move_script(const MoveScript& script, const Presentation& start, const ProofRefResolver& resolver = {});

}  // namespace tofh
