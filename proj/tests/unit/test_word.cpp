#include <doctest.h>

#include <set>
#include <stdexcept>

#include <random>

#include "tangram/word.hpp"

using namespace tangram;

TEST_CASE("word parsing and serialization") {
    CHECK(Word::parse("").size() == 0);
    CHECK(Word::parse("").str() == "");
    CHECK(Word::parse("0121").str() == "0121");
    CHECK(Word::parse("aba").str() == "010");
    CHECK(Word::parse("03210123").alphabet().size == 4);
    CHECK_THROWS_AS(Word::parse("12", Alphabet(2)), std::invalid_argument);
    CHECK_THROWS_AS(Alphabet(0), std::invalid_argument);
}

TEST_CASE("letter counts") {
    CHECK(letter_counts(Word::parse("")).empty());
    LetterCounts counts = letter_counts(Word::parse("0101"));
    CHECK(counts == LetterCounts{{0, 2}, {1, 2}});
    counts = letter_counts(Word::parse("03210123"));
    CHECK(counts == LetterCounts{{0, 2}, {1, 2}, {2, 2}, {3, 2}});
}

TEST_CASE("tangram parity test") {
    CHECK(is_tangram(Word::parse("")));
    CHECK_FALSE(is_tangram(Word::parse("012")));
    CHECK(is_tangram(Word::parse("012130212321")));
    CHECK(is_tangram(Word::parse("03210123")));
    CHECK_FALSE(is_tangram(Word::parse("0")));
}

TEST_CASE("tangram iff all counts even") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 200; trial++) {
        std::vector<Letter> letters(rng() % 12);
        for (auto& l : letters) l = static_cast<Letter>(rng() % 4);
        Word w(letters, Alphabet(4));
        bool all_even = true;
        for (auto& [letter, count] : letter_counts(w))
            if (count % 2 != 0) all_even = false;
        CHECK(is_tangram(w) == all_even);
    }
}

TEST_CASE("factor counts never exceed word counts") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; trial++) {
        std::vector<Letter> letters(1 + rng() % 10);
        for (auto& l : letters) l = static_cast<Letter>(rng() % 3);
        Word w(letters, Alphabet(3));
        LetterCounts whole = letter_counts(w);
        for_each_factor(w, 1, w.size(), [&](std::size_t, const Word& f) {
            for (auto& [letter, count] : letter_counts(f)) CHECK(count <= whole[letter]);
        });
    }
}

TEST_CASE("factor enumeration") {
    auto fs = factors(Word::parse("aba"), 2, 2);
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].first == 0);
    CHECK(fs[0].second.str() == "01");
    CHECK(fs[1].first == 1);
    CHECK(fs[1].second.str() == "10");

    fs = factors(Word::parse("aa"), 1, 2);
    REQUIRE(fs.size() == 3);

    // |w|(|w|+1)/2 factors in total
    for (std::size_t n = 1; n <= 8; n++) {
        std::vector<Letter> letters(n, 0);
        Word w(letters, Alphabet(2));
        CHECK(factors(w, 1, n).size() == n * (n + 1) / 2);
    }

    // the five distinct length-2 factors of 012103
    auto f2 = factors(Word::parse("012103"), 2, 2);
    std::set<std::string> distinct;
    for (auto& [offset, f] : f2) distinct.insert(f.str());
    CHECK(distinct.size() == 5);

    CHECK_THROWS_AS(factors(Word::parse("ab"), 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(factors(Word::parse("ab"), 2, 1), std::invalid_argument);
}
