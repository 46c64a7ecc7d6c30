#include "tangram/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace tangram {

Alphabet::Alphabet(int q) : size(q) {
    if (q < 1) throw std::invalid_argument("Alphabet: size must be >= 1");
}

Word::Word(std::vector<Letter> letters, Alphabet a) : letters_(std::move(letters)), alphabet_(a) {
    for (Letter l : letters_)
        if (!alphabet_.contains(l))
            throw std::invalid_argument("Word: letter " + std::to_string(int(l)) +
                                        " outside alphabet of size " + std::to_string(a.size));
}

static int decode_char(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a';
    throw std::invalid_argument(std::string("Word: cannot parse character '") + c + "'");
}

Word Word::parse(const std::string& text) {
    std::vector<Letter> letters;
    int max_letter = -1;
    letters.reserve(text.size());
    for (char c : text) {
        int v = decode_char(c);
        letters.push_back(static_cast<Letter>(v));
        max_letter = std::max(max_letter, v);
    }
    return Word(std::move(letters), Alphabet(std::max(1, max_letter + 1)));
}

Word Word::parse(const std::string& text, Alphabet a) {
    std::vector<Letter> letters;
    letters.reserve(text.size());
    for (char c : text) letters.push_back(static_cast<Letter>(decode_char(c)));
    return Word(std::move(letters), a);
}

void Word::push_back(Letter l) {
    if (!alphabet_.contains(l)) throw std::invalid_argument("Word: letter outside alphabet");
    letters_.push_back(l);
}

Word Word::factor(std::size_t offset, std::size_t len) const {
    if (offset + len > letters_.size()) throw std::out_of_range("Word::factor");
    return Word(std::vector<Letter>(letters_.begin() + offset, letters_.begin() + offset + len),
                alphabet_);
}

Word Word::operator+(const Word& o) const {
    std::vector<Letter> joined = letters_;
    joined.insert(joined.end(), o.letters_.begin(), o.letters_.end());
    return Word(std::move(joined), Alphabet(std::max(alphabet_.size, o.alphabet_.size)));
}

std::string Word::str() const {
    std::string s;
    s.reserve(letters_.size());
    for (Letter l : letters_) s.push_back(static_cast<char>('0' + l));
    return s;
}

LetterCounts letter_counts(const Word& w) {
    LetterCounts counts;
    for (Letter l : w.letters()) counts[l]++;
    return counts;
}

bool is_tangram(const Letter* w, std::size_t len) {
    if (len % 2 != 0) return false;
    unsigned parity = 0;
    for (std::size_t i = 0; i < len; i++) parity ^= 1u << w[i];
    return parity == 0;
}

bool is_tangram(const Word& w) { return is_tangram(w.data(), w.size()); }

void for_each_factor(const Word& w, std::size_t min_len, std::size_t max_len,
                     const std::function<void(std::size_t, const Word&)>& visit) {
    if (min_len < 1 || min_len > max_len)
        throw std::invalid_argument("for_each_factor: need 1 <= min_len <= max_len");
    for (std::size_t offset = 0; offset < w.size(); offset++) {
        std::size_t longest = std::min(max_len, w.size() - offset);
        for (std::size_t len = min_len; len <= longest; len++)
            visit(offset, w.factor(offset, len));
    }
}

std::vector<std::pair<std::size_t, Word>> factors(const Word& w, std::size_t min_len,
                                                  std::size_t max_len) {
    std::vector<std::pair<std::size_t, Word>> out;
    for_each_factor(w, min_len, max_len,
                    [&](std::size_t offset, const Word& f) { out.emplace_back(offset, f); });
    return out;
}

} // namespace tangram
