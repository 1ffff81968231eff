#pragma once

#include "tofh/matrix.hpp"
#include "tofh/word.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tofh {

enum class GateKind {
    X1q,
    Z1q,
    H1q,
    Kpair,
    CXctrl,
    CZctrl,
    CCX,
    CCZ,
    Swap,
    OneLevelNeg,
    TwoLevelX,
    FourLevelK,
    Coxeter,
};

struct GateSymbol {
    GateKind kind = GateKind::X1q;
    // qubits for circuit gates (CX: control, target; CCX: the two controls),
    // levels for multi-level operators, the index 1..8 for Coxeter generators
    std::vector<int> params;

    bool operator==(const GateSymbol& o) const { return kind == o.kind && params == o.params; }
};

bool is_multilevel(GateKind k);

// Multi-level brackets are parsed without ordering checks so that invalid
// reindexing results such as TLX[2,1] can still be represented.
std::optional<GateSymbol> parse_symbol(std::string_view tok);
GateSymbol symbol(std::string_view tok);  // throws std::invalid_argument
std::string symbol_name(const GateSymbol& g);

// Level indices strictly increasing and below dim; circuit-gate qubits valid.
bool well_formed(const GateSymbol& g, std::size_t dim = 8);

// Qubits touched by a circuit gate.
std::vector<int> qubit_support(const GateSymbol& g);

GateMatrix gate_matrix(const GateSymbol& g, unsigned qubits = 3);
GateMatrix gate_matrix(std::string_view tok, unsigned qubits = 3);
// Multi-level operator at an arbitrary dimension.
GateMatrix level_operator(const GateSymbol& g, std::size_t dim);
GateMatrix permutation_matrix(const std::vector<int>& images);

struct Interpretation {
    std::vector<std::string> alphabet;
    std::map<std::string, GateMatrix> images;
    bool injective = false;

    std::size_t dim() const;
    bool has(const std::string& s) const { return images.count(s) != 0; }
};

// Every token mapped to its standard matrix at the given dimension.
Interpretation standard_interpretation(const std::vector<std::string>& alphabet, std::size_t dim = 8);
GateMatrix interp_word(const Interpretation& i, const Word& w);
// Standard semantics without an explicit alphabet (cached per token).
GateMatrix word_matrix(const Word& w, std::size_t dim = 8);

using CoxeterMatrix = std::array<std::array<int, 8>, 8>;
const CoxeterMatrix& coxeter_matrix();
GateMatrix coxeter_generator(int j);
Word coxeter_circuit(int j);

// w1..w14 flattened to r-words. The repaired table meets every stated target.
std::vector<std::pair<std::string, Word>> construction_words();
// The table as printed, flattened the same way; kept for diagnostics.
std::vector<std::pair<std::string, Word>> printed_construction_words();
// Intended image of each word, as a circuit word.
std::vector<std::pair<std::string, Word>> construction_targets();
// r-words for the four primitive gates X0, CX01, CCX12, K12.
std::vector<std::pair<std::string, Word>> e8_gate_words();

}  // namespace tofh
