#pragma once

#include "tofh/matrix.hpp"
#include "tofh/word.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tofh {

struct NormalForm {
    Word body;  // over Sigma_1
    int h_exp = 0;
};

// Pushes every H2 to the right end using the TofH(3) pushing rules and
// cancels H2 pairs. Symbols without a listed rule are expanded through their
// defining word first. With TOFH_CHECK_STEPS defined, every step is checked
// against the exact semantics.
NormalForm normalize_h(const Word& w);
Word recombine(const NormalForm& nf);

// [H2][g][H2] written over Sigma_1; throws for symbols outside Sigma_1.
const Word& h_conjugate(const std::string& g);
// Sigma_0 / CCZ / TLK word for a Sigma_1 symbol (the symbol itself if basic).
const Word& basic_expansion(const std::string& g);

struct EqVerdict {
    bool equal = false;
    std::optional<std::size_t> witness_column;
    int h_exp = -1;  // agreed h exponent when equal
};

// Exact decision over 3 qubits. Throws std::logic_error if equal words get
// different h exponents.
EqVerdict circuits_equal(const Word& w1, const Word& w2);

struct ToffoliReport {
    std::size_t count = 0;
    bool within_bound = true;
};
constexpr std::size_t kToffoliBound = 120;
ToffoliReport toffoli_report(const Word& w);

struct MinimalityOptions {
    int max_terms = 2;
    int coeff_bound = 4;
};

// An element of the commutant of `sub` that fails to commute with some member
// of `full` outside `sub`, or nullopt when none is found within the bounds.
std::optional<GateMatrix> minimality_witness(const std::vector<GateMatrix>& sub, const std::vector<GateMatrix>& full,
                                             const MinimalityOptions& opt = {});

struct ProbeResult {
    bool exceeded_cap = false;
    std::size_t order = 0;  // exact order, or the number of elements seen when the cap was hit
};
ProbeResult finite_subgroup_probe(const std::vector<GateMatrix>& gens, std::size_t cap);

// The published witness matrices N and L.
GateMatrix witness_N();
GateMatrix witness_L();

}  // namespace tofh
