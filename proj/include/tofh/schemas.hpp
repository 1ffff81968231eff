#pragma once

#include "tofh/presentation.hpp"

#include <string>
#include <vector>

namespace tofh {

// Generator alphabets in table order.
const std::vector<std::string>& sigma_D();
const std::vector<std::string>& sigma_0();
const std::vector<std::string>& sigma_1();
const std::vector<std::string>& sigma_2();
const std::vector<std::string>& sigma_K();
const std::vector<std::string>& sigma_Z();
// Resolves "D", "0", "1", "2", "K", "Z" (with or without a "Sigma_" prefix).
const std::vector<std::string>& named_alphabet(const std::string& name);

// Multi-level schema names, linearly ordered ones first.
const std::vector<std::string>& multilevel_schemas();
bool is_linear_schema(const std::string& name);
// Number of distinct levels the schema's parameters occupy.
int schema_arity(const std::string& name);

// Every instance of a multi-level schema, a R_D family, or a fixed table.
// Fixed tables require n = 8; schemas need n >= 4 (n >= 8 for Rep9).
RelationSet instantiate(const std::string& schema, std::size_t n = 8);

struct SchemaCount {
    std::string name;
    int levels = 0;
    bool linear = true;
    std::size_t enumerated = 0;
    std::size_t formula = 0;
};

struct CountReport {
    std::size_t n = 0;
    std::vector<SchemaCount> rows;
    std::size_t linear_total = 0;
    std::size_t partial_total = 0;
    std::size_t total = 0;
    // enumerated subtotal per level count m (linear schemas only)
    std::vector<std::pair<int, std::size_t>> linear_by_levels;
};

CountReport count_all(std::size_t n);

// Published totals, for comparison at n = 8.
struct PublishedCounts {
    std::size_t linear_total = 699;
    std::size_t partial_total = 1414;
    std::size_t total = 2113;
    std::size_t m3 = 102;
    std::size_t m5 = 224;
    std::size_t rep9 = 1;
};

// M N = N w with w the shortest, then lexicographically least, word over
// Sigma_D such that [w] = [N]^-1 [M] [N]. Throws std::invalid_argument for
// disjoint supports and std::runtime_error if no word is found within max_depth.
Relation commutator_family(const std::string& M, const std::string& N, int max_depth = 4);

struct TableInfo {
    std::string name;
    std::string description;
};
const std::vector<TableInfo>& builtin_tables();

// A builtin table as a presentation with its standard interpretation attached.
Presentation builtin_presentation(const std::string& name, std::size_t n = 8);
// builtin_presentation at n = 8, for "[include]" sections.
TableResolver builtin_resolver();

}  // namespace tofh
