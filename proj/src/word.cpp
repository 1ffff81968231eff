#include "tofh/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tofh {

Word parse_word(std::string_view text) {
    Word w;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok)
        if (tok != ".") w.push_back(tok);
    return w;
}

std::string format_word(const Word& w) {
    if (w.empty()) return ".";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += w[i];
    }
    return s;
}

Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Word power(const Word& w, int k) {
    Word r;
    for (int i = 0; i < k; ++i) r.insert(r.end(), w.begin(), w.end());
    return r;
}

Word formal_reverse(const Word& w) { return Word(w.rbegin(), w.rend()); }

bool natural_less(std::string_view a, std::string_view b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        bool da = std::isdigit(static_cast<unsigned char>(a[i])), db = std::isdigit(static_cast<unsigned char>(b[j]));
        if (da && db) {
            std::size_t i2 = i, j2 = j;
            while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
            while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
            auto na = a.substr(i, i2 - i), nb = b.substr(j, j2 - j);
            while (na.size() > 1 && na[0] == '0') na.remove_prefix(1);
            while (nb.size() > 1 && nb[0] == '0') nb.remove_prefix(1);
            if (na.size() != nb.size()) return na.size() < nb.size();
            if (na != nb) return na < nb;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    if ((a.size() - i) != (b.size() - j)) return a.size() - i < b.size() - j;
    return a < b;
}

}  // namespace tofh
