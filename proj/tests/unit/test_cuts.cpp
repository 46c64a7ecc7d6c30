#include <doctest.h>

#include <functional>
#include <stdexcept>

#include "oracles.hpp"
#include "tangram/cuts.hpp"
#include "tangram/freeness.hpp"

using namespace tangram;

namespace {

// every word over Sigma_q of length 1..max_len
template <class Fn>
void for_all_words(int q, std::size_t max_len, const Fn& fn) {
    std::vector<Letter> letters;
    std::function<void()> rec = [&] {
        if (!letters.empty()) fn(Word(letters, Alphabet(q)));
        if (letters.size() == max_len) return;
        for (int a = 0; a < q; a++) {
            letters.push_back(static_cast<Letter>(a));
            rec();
            letters.pop_back();
        }
    };
    rec();
}

} // namespace

TEST_CASE("cut number of a square is 1") {
    auto found = cut_number_oracle(Word::parse("aa"), 4);
    REQUIRE(found);
    CHECK(found->first == 1);
    CHECK(found->second.validate(Word::parse("aa")));
    CHECK(found->second.common.str() == "0");
}

TEST_CASE("cut number of abacbc is 3") {
    Word w = Word::parse("abacbc");
    auto found = cut_number_oracle(w, 4);
    REQUIRE(found);
    CHECK(found->first == 3);
    CHECK(found->second.validate(w));
    CHECK_FALSE(cut_number_oracle(w, 2));
}

TEST_CASE("non-tangrams and the empty word have no cut number") {
    CHECK_FALSE(cut_number_oracle(Word::parse("012"), 4));
    CHECK_FALSE(cut_number_oracle(Word(), 4));
    CHECK_FALSE(classify_tangram(Word::parse("012"), 4).cut_number);
    CHECK_THROWS_AS(cut_number_oracle(Word(std::vector<Letter>(17, 0), Alphabet(2)), 4),
                    std::invalid_argument);
}

TEST_CASE("certificate replay rejects corrupted certificates") {
    Word w = Word::parse("aabb");
    auto found = cut_number_oracle(w, 4);
    REQUIRE(found);
    CHECK(found->first == 2);
    CutCertificate cert = found->second;
    CHECK(cert.validate(w));
    cert.common = Word::parse("00");
    CHECK_FALSE(cert.validate(w));
}

TEST_CASE("pattern route examples") {
    CHECK(cut_number_via_patterns(Word::parse("aa"), 1));
    CHECK(cut_number_via_patterns(Word::parse("03210123"), 4));
    CHECK_FALSE(cut_number_via_patterns(Word::parse("03210123"), 3));
    CHECK(cut_number_via_patterns(Word::parse("aabb"), 2));
    CHECK_FALSE(cut_number_via_patterns(Word::parse("aabb"), 1));
    CHECK_FALSE(cut_number_via_patterns(Word::parse("abc"), 4));
}

TEST_CASE("route agreement on small words") {
    // the acceptance suite runs the full published sweep; this is a fast slice
    for (int q : {2, 3}) {
        std::size_t max_len = q == 2 ? 8 : 6;
        for_all_words(q, max_len, [&](const Word& w) {
            for (int k = 1; k <= 4; k++) {
                bool via_cuts = cut_number_oracle(w, k).has_value();
                bool via_patterns = cut_number_via_patterns(w, k);
                REQUIRE_MESSAGE(via_cuts == via_patterns,
                                w.str() << " k=" << k << " cuts=" << via_cuts);
            }
        });
    }
}

TEST_CASE("2-tangrams contain squares") {
    for_all_words(3, 6, [&](const Word& w) {
        auto found = cut_number_oracle(w, 2);
        if (found) CHECK_FALSE(is_square_free(w));
    });
}

TEST_CASE("factor scan examples") {
    auto spans = scan_k_tangram_factors(Word::parse("aa"), 1);
    REQUIRE(spans.size() == 1);
    CHECK(spans[0] == std::pair<std::size_t, std::size_t>{0, 2});
    CHECK(scan_k_tangram_factors(Word::parse("abc"), 4).empty());
}

TEST_CASE("factor scan agrees with the oracle about existence") {
    for_all_words(2, 8, [&](const Word& w) {
        for (int k = 1; k <= 3; k++) {
            bool scanned = !scan_k_tangram_factors(w, k).empty();
            bool any_factor = false;
            for_each_factor(w, 1, w.size(), [&](std::size_t, const Word& f) {
                if (!any_factor && cut_number_oracle(f, k)) any_factor = true;
            });
            REQUIRE_MESSAGE(scanned == any_factor, w.str() << " k=" << k);
        }
    });
}

TEST_CASE("suffix tangram test") {
    Word w = Word::parse("abcaa");
    CHECK(has_k_tangram_suffix(w.data(), w.size(), 1));
    Word v = Word::parse("aabc");
    CHECK_FALSE(has_k_tangram_suffix(v.data(), v.size(), 4));
    Word u = Word::parse("xy03210123");
    CHECK(has_k_tangram_suffix(u.data(), u.size(), 4));
    CHECK_FALSE(has_k_tangram_suffix(u.data(), u.size(), 3));
}
