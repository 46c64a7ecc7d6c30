#include <doctest.h>

#include <stdexcept>

#include <random>
#include <set>

#include "oracles.hpp"
#include "tangram/pattern.hpp"

using namespace tangram;

TEST_CASE("pattern parsing and canonical form") {
    Pattern p = Pattern::parse("ABACBC");
    CHECK(p.length() == 6);
    CHECK(p.variable_count() == 3);
    CHECK(p.str() == "ABACBC");
    CHECK(p.doubled_exactly_twice());
    CHECK_THROWS_AS(Pattern::parse("BA"), std::invalid_argument);
    CHECK_THROWS_AS(Pattern::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Pattern::parse("Ab"), std::invalid_argument);
    CHECK(Pattern::canonicalize({1, 0, 1, 0}).str() == "ABAB");
}

TEST_CASE("pattern reversal") {
    CHECK(reverse(Pattern::parse("AA")).str() == "AA");
    CHECK(reverse(Pattern::parse("ABCACB")).str() == "ABCBAC");
    CHECK(reverse(Pattern::parse("ABACDBDC")).str() == "ABCBADCD");
    std::mt19937 rng(31);
    for (int trial = 0; trial < 100; trial++) {
        std::vector<std::uint8_t> vars(1 + rng() % 8);
        for (auto& v : vars) v = static_cast<std::uint8_t>(rng() % 4);
        Pattern p = Pattern::canonicalize(vars);
        CHECK(reverse(reverse(p)) == p);
    }
}

TEST_CASE("find_occurrence examples") {
    auto occ = find_occurrence(Pattern::parse("AA"), Word::parse("xabab"));
    REQUIRE(occ);
    CHECK(occ->offset == 1);
    CHECK(occ->assignment.images[0].str() == "01"); // "ab"

    occ = find_occurrence(Pattern::parse("ABACBC"), Word::parse("zabacbcz"));
    REQUIRE(occ);
    CHECK(occ->offset == 1);
    CHECK(occ->assignment.images[0].size() == 1);
    CHECK(occ->assignment.images[1].size() == 1);
    CHECK(occ->assignment.images[2].size() == 1);

    CHECK_FALSE(find_occurrence(Pattern::parse("AA"), Word::parse("abc")));
}

TEST_CASE("occurrences are sound") {
    std::mt19937 rng(77);
    std::vector<Pattern> patterns = {Pattern::parse("AA"), Pattern::parse("ABAB"),
                                     Pattern::parse("ABACBC"), Pattern::parse("ABCBA")};
    for (int trial = 0; trial < 300; trial++) {
        std::vector<Letter> letters(rng() % 14);
        for (auto& l : letters) l = static_cast<Letter>(rng() % 3);
        Word w(letters, Alphabet(3));
        for (const auto& p : patterns) {
            auto occ = find_occurrence(p, w);
            if (!occ) continue;
            for (const auto& img : occ->assignment.images) CHECK(img.size() >= 1);
            Word image = occ->assignment.apply(p);
            REQUIRE(occ->offset + image.size() <= w.size());
            CHECK(w.factor(occ->offset, image.size()) == image);
        }
    }
}

TEST_CASE("occurrence search is complete on small instances") {
    std::mt19937 rng(2024);
    std::vector<Pattern> patterns = {Pattern::parse("AA"), Pattern::parse("ABAB"),
                                     Pattern::parse("ABBA"), Pattern::parse("ABACBC"),
                                     Pattern::parse("ABCBAC")};
    for (int trial = 0; trial < 200; trial++) {
        std::vector<Letter> letters(rng() % 14);
        for (auto& l : letters) l = static_cast<Letter>(rng() % 2 + 2);
        Word w(letters, Alphabet(4));
        for (const auto& p : patterns) {
            bool got = find_occurrence(p, w, 10).has_value();
            bool expected = oracle::occurrence_exists_all_assignments(p, w, 10);
            CHECK(got == expected);
        }
    }
}

TEST_CASE("the image-length cap is honored") {
    // "aaaa" contains AA with |m(AA)| = 2 and 4
    Word w = Word::parse("aaaa");
    auto occ = find_occurrence(Pattern::parse("AA"), w, 2);
    REQUIRE(occ);
    CHECK(occ->assignment.images[0].size() == 1);
    CHECK_FALSE(find_occurrence(Pattern::parse("ABAB"), Word::parse("abab"), 3));
}

TEST_CASE("exact pattern match") {
    CHECK(exact_pattern_match(Pattern::parse("AABB"), Word::parse("aabb")));
    CHECK(exact_pattern_match(Pattern::parse("ABAB"), Word::parse("abab")));
    CHECK_FALSE(exact_pattern_match(Pattern::parse("AA"), Word::parse("aabb")));
    CHECK_FALSE(exact_pattern_match(Pattern::parse("AA"), Word::parse("aba")));
    auto m = exact_pattern_match(Pattern::parse("ABCDADCB"), Word::parse("03210123"));
    REQUIRE(m);
    CHECK(m->images[0].str() == "0");
    CHECK(m->images[1].str() == "3");
    CHECK(m->images[2].str() == "2");
    CHECK(m->images[3].str() == "1");
}

TEST_CASE("pattern containment") {
    CHECK(pattern_contains(Pattern::parse("ABAB"), Pattern::parse("AA")));
    CHECK_FALSE(pattern_contains(Pattern::parse("ABACBC"), Pattern::parse("AA")));
    CHECK_FALSE(pattern_contains(Pattern::parse("ABCACB"), Pattern::parse("ABACBC")));
    CHECK(pattern_contains(Pattern::parse("AABBCC"), Pattern::parse("AA")));
}

TEST_CASE("doubled pattern universe sizes are (2j-1)!!") {
    CHECK(doubled_patterns(1).size() == 1);
    CHECK(doubled_patterns(2).size() == 3);
    CHECK(doubled_patterns(3).size() == 15);
    CHECK(doubled_patterns(4).size() == 105);
    for (const auto& p : doubled_patterns(3)) CHECK(p.doubled_exactly_twice());
}

TEST_CASE("S_1 and S_2") {
    PatternSet s1 = generate_Sk(1);
    REQUIRE(s1.patterns.size() == 1);
    CHECK(s1.patterns[0].str() == "AA");
    CHECK(generate_Sk(2) == s1);
}

TEST_CASE("S_3") {
    PatternSet s3 = generate_Sk(3);
    std::vector<std::string> names;
    for (const auto& p : s3.patterns) names.push_back(p.str());
    CHECK(names == std::vector<std::string>{"AA", "ABACBC", "ABCACB", "ABCBAC"});
}

TEST_CASE("S_k chain and minimality") {
    PatternSet s1 = generate_Sk(1), s2 = generate_Sk(2), s3 = generate_Sk(3), s4 = generate_Sk(4);
    auto contains_all = [](const PatternSet& big, const PatternSet& small) {
        for (const auto& p : small.patterns)
            if (std::find(big.patterns.begin(), big.patterns.end(), p) == big.patterns.end())
                return false;
        return true;
    };
    CHECK(contains_all(s2, s1));
    CHECK(contains_all(s3, s2));
    CHECK(contains_all(s4, s3));
    CHECK(s4.patterns.size() == 21);

    for (const auto& p : s4.patterns) {
        CHECK(p.doubled_exactly_twice());
        for (const auto& q : s4.patterns)
            if (p != q) CHECK_FALSE(pattern_contains(p, q));
    }
}

TEST_CASE("every S_3 pattern contains the five-fragment formula") {
    Formula f3 = Formula::parse("AB.BA.AC.CA.BC");
    for (const auto& p : generate_Sk(3).patterns) {
        CHECK(find_formula_occurrence(f3, p.as_word(), 8));
    }
}

TEST_CASE("formula parsing") {
    Formula f = Formula::parse("AB.BA.AC.CA.BC");
    CHECK(f.variable_count() == 3);
    CHECK(f.fragments().size() == 5);
    CHECK(f.str() == "AB.BA.AC.CA.BC");
    // isolated variables are rejected
    CHECK_THROWS_AS(Formula::parse("AB.AC"), std::invalid_argument);
    CHECK_THROWS_AS(Formula::parse("AA."), std::invalid_argument);
}

TEST_CASE("formula occurrences") {
    Formula f3 = Formula::parse("AB.BA.AC.CA.BC");
    auto m = find_formula_occurrence(f3, Word::parse("aa"), 8);
    REQUIRE(m);
    CHECK(m->images[0].str() == "0");
    CHECK(m->images[1].str() == "0");
    CHECK(m->images[2].str() == "0");

    CHECK(find_formula_occurrence(f3, Word::parse("abacbc"), 8));
    CHECK_FALSE(find_formula_occurrence(f3, Word::parse("abc"), 8));
    CHECK_THROWS_AS(find_formula_occurrence(f3, Word::parse("abc"), 0), std::invalid_argument);
}

TEST_CASE("occurrence spans") {
    auto spans = occurrence_spans(Pattern::parse("AA"), Word::parse("aa"));
    REQUIRE(spans.size() == 1);
    CHECK(spans[0] == std::pair<std::size_t, std::size_t>{0, 2});

    spans = occurrence_spans(Pattern::parse("AA"), Word::parse("aabaa"));
    CHECK(spans == std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {3, 2}});
}

TEST_CASE("parallel occurrence search matches sequential") {
    std::mt19937 rng(13);
    std::vector<Letter> letters(400);
    for (auto& l : letters) l = static_cast<Letter>(rng() % 4);
    Word w(letters, Alphabet(4));
    for (const char* name : {"AA", "ABACBC", "ABCBAC"}) {
        Pattern p = Pattern::parse(name);
        auto seq = find_occurrence(p, w);
        auto par = find_occurrence_parallel(p, w, std::nullopt, 2);
        CHECK(seq.has_value() == par.has_value());
        if (seq && par) CHECK(seq->offset == par->offset);
    }
}
