#pragma once

#include "tofh/gates.hpp"
#include "tofh/matrix.hpp"
#include "tofh/word.hpp"

#include <random>
#include <string>
#include <vector>

namespace testing {

inline std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

// 2x2 building blocks written out by hand
inline tofh::GateMatrix m2(long a, long b, long c, long d, unsigned sde = 0) {
    return tofh::GateMatrix::from_ints(2, {a, b, c, d}, sde);
}
inline tofh::GateMatrix I2() { return m2(1, 0, 0, 1); }
inline tofh::GateMatrix Xm() { return m2(0, 1, 1, 0); }
inline tofh::GateMatrix Zm() { return m2(1, 0, 0, -1); }
inline tofh::GateMatrix Hm() { return m2(1, 1, 1, -1, 1); }

// a (x) b (x) c with qubit 0 leftmost
inline tofh::GateMatrix kron3(const tofh::GateMatrix& a, const tofh::GateMatrix& b, const tofh::GateMatrix& c) {
    return tofh::mat_kron(a, tofh::mat_kron(b, c));
}

inline tofh::Word random_word(std::mt19937& rng, const std::vector<std::string>& alphabet, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len), pick(0, alphabet.size() - 1);
    tofh::Word w;
    for (std::size_t n = len(rng); n > 0; --n) w.push_back(alphabet[pick(rng)]);
    return w;
}

}  // namespace testing
