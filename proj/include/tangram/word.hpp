#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace tangram {

using Letter = std::uint8_t;

/// Integer alphabet {0, 1, ..., size-1}.
struct Alphabet {
    int size = 1;

    explicit Alphabet(int q = 1);
    bool contains(int letter) const { return letter >= 0 && letter < size; }
};

/// Finite word over an integer alphabet. The empty word is valid.
class Word {
public:
    Word() : alphabet_(1) {}
    explicit Word(Alphabet a) : alphabet_(a) {}
    Word(std::vector<Letter> letters, Alphabet a);

    /// Parses a contiguous string of digits ('0'-'9') or lowercase letters
    /// ('a' -> 0, 'b' -> 1, ...). The alphabet defaults to the smallest one
    /// containing every letter seen.
    static Word parse(const std::string& text);
    static Word parse(const std::string& text, Alphabet a);

    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    const std::vector<Letter>& letters() const { return letters_; }
    const Letter* data() const { return letters_.data(); }
    Alphabet alphabet() const { return alphabet_; }

    void push_back(Letter l);
    Word factor(std::size_t offset, std::size_t len) const;
    Word operator+(const Word& o) const;
    bool operator==(const Word& o) const { return letters_ == o.letters_; }
    bool operator!=(const Word& o) const { return !(*this == o); }
    bool operator<(const Word& o) const { return letters_ < o.letters_; }

    /// Serializes as a contiguous digit string; the empty word gives "".
    std::string str() const;

private:
    std::vector<Letter> letters_;
    Alphabet alphabet_;
};

/// Multiset of letter occurrences.
using LetterCounts = std::map<int, std::size_t>;

LetterCounts letter_counts(const Word& w);

/// True iff every letter occurs an even number of times. The empty word
/// is a tangram.
bool is_tangram(const Word& w);
bool is_tangram(const Letter* w, std::size_t len);

/// Visits every contiguous factor with min_len <= length <= max_len,
/// once per (offset, length). Requires 1 <= min_len <= max_len.
void for_each_factor(const Word& w, std::size_t min_len, std::size_t max_len,
                     const std::function<void(std::size_t, const Word&)>& visit);

std::vector<std::pair<std::size_t, Word>> factors(const Word& w, std::size_t min_len,
                                                  std::size_t max_len);

} // namespace tangram
