#pragma once

#include "tofh/presentation.hpp"
#include "tofh/tietze.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tofh {

struct ProofStep {
    enum class Kind { Rel, Use };
    Kind kind = Kind::Rel;
    std::string ref;
    // absent for position-free steps, resolved by leftmost match
    std::optional<std::size_t> position;
    Direction direction = Direction::Forward;
    int lineno = 0;
};

struct ProofLabel {
    std::string name;
    std::size_t index = 0;
    Word lhs;
    Word rhs;
};

struct Derivation {
    ProofLabel label;
    std::vector<ProofStep> steps;
};

struct Proof {
    std::string presentation_file;
    Presentation base;
    std::vector<Derivation> derivations;

    const Derivation* find(const std::string& name) const;
};

// Header "[proof over <file>]", then "lemma <name> (<index>): lhs = rhs"
// blocks with step lines "rel <id> [at <pos>] fwd|rev" or "use <name> [at <pos>] fwd|rev".
Proof parse_proof(const std::string& text, const Presentation& base);
// Loads the presentation named in the header relative to the proof file.
Proof load_proof(const std::string& path, const TableResolver& resolver = {});
std::string format_proof(const Proof& p);

struct DerivationReport {
    std::string name;
    bool wellfounded = true;
    bool valid = true;
    std::string message;
    std::vector<std::string> notes;
};

struct ProofReport {
    bool indexed = true;
    bool wellfounded = true;
    bool valid = true;
    bool acyclic = true;
    std::vector<std::string> cycle;
    std::vector<DerivationReport> derivations;

    bool accepted() const { return indexed && wellfounded && valid && acyclic; }
};

ProofReport check_proof(const Proof& p);
Digraph derivation_graph(const Proof& p);

// Every step with an explicit position; throws std::invalid_argument if a step does not replay.
Proof resolve_positions(const Proof& p);

Proof inline_lemma(const Proof& p, const std::string& at, const std::string& lemma);
Proof flatten(const Proof& p);
// Base-only steps of a derivation in the flattened proof.
std::vector<RewriteStep> flat_steps(const Proof& p, const std::string& name);

std::vector<TietzeMove> to_relplus_moves(const Proof& p, const RelationSet& target);

// Resolves "via <name>" in move scripts to the flattened derivation of a
// lemma whose claim is the relation (or its reverse).
ProofRefResolver proof_resolver(std::vector<Proof> proofs);
// Loads a move script with its presentation and proof files (paths relative
// to the script) and runs it.
Journal run_script_file(const std::string& path, const TableResolver& tables = {});

// ---- reindexing ----

struct Permutation {
    std::vector<int> images;

    static Permutation identity(std::size_t n);
    // "perm i0 i1 ..." or just the images
    static Permutation parse(const std::string& text);
    bool is_bijection() const;
    std::size_t size() const { return images.size(); }
    int operator()(int a) const { return images.at(a); }
    Permutation inverse() const;
    // (this * o)(a) = this(o(a))
    Permutation compose(const Permutation& o) const;
};

Word reindex_word(const Permutation& s, const Word& w);
bool reindex_valid(const Permutation& s, const Word& w);

// A word v over two-level X operators with [v] the permutation matrix of s
// and [s(g)] = [v g reverse(v)]. Throws std::invalid_argument when s is not a
// valid reindexing of g.
Word conjugation_witness(const Permutation& s, const std::string& g);

}  // namespace tofh
