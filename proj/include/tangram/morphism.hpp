#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tangram/freeness.hpp"
#include "tangram/rational.hpp"
#include "tangram/word.hpp"

namespace tangram {

/// q-uniform morphism: every letter of the source alphabet maps to an
/// image of the same length q over the target alphabet.
class UniformMorphism {
public:
    UniformMorphism(Alphabet source, Alphabet target, std::vector<Word> images);

    int source_size() const { return source_.size; }
    int target_size() const { return target_.size; }
    Alphabet source_alphabet() const { return source_; }
    Alphabet target_alphabet() const { return target_; }
    std::size_t image_length() const { return image_length_; }
    const Word& image(int letter) const;

    Word apply(const Word& w) const;

    /// True iff all images are pairwise distinct.
    bool injective_on_letters() const;

private:
    Alphabet source_;
    Alphabet target_;
    std::size_t image_length_;
    std::vector<Word> images_;
};

/// The 2-uniform morphism 0->01, 1->21, 2->03, 3->23 whose fixed point is
/// the four-letter formula-avoiding word used for the t(3) bound.
UniformMorphism b4_morphism();

/// Morphism file format: one `LETTER -> IMAGE` line per source letter,
/// '#' starts a comment. A comment line `# digest: fnv1a64:<16 hex>` pins
/// the content digest; load verifies it unless enforce_digest is false.
UniformMorphism parse_morphism(const std::string& text, bool enforce_digest = true);
UniformMorphism load_morphism_file(const std::string& path, bool enforce_digest = true);

/// FNV-1a 64 digest of the canonical content serialization
/// ("<letter> -> <image>\n" per letter, ascending). Used to pin data files.
std::uint64_t morphism_digest(const UniformMorphism& m);
std::string morphism_digest_hex(const UniformMorphism& m);

/// Serializes in the file format, including the digest line.
std::string morphism_file_text(const UniformMorphism& m, const std::string& header_comment = "");

/// Length-L prefix of the fixed point obtained by iterating the morphism
/// on a seed letter. Requires image(seed) to start with seed and q >= 2.
Word fixed_point_prefix(const UniformMorphism& m, Letter seed, std::size_t L);

struct SyncCounterexample {
    int a = 0, b = 0, c = 0;
    std::size_t offset = 0; // f(c) occurs in f(ab) at this offset
};

/// Exhaustive synchronization check: f is synchronizing iff whenever
/// f(ab) = u f(c) v, either u is empty and a = c, or v is empty and b = c.
/// Returns nullopt when synchronizing, otherwise a counterexample.
std::optional<SyncCounterexample> is_synchronizing(const UniformMorphism& m);

/// Parameters of the synchronization lemma check: source words are
/// alpha^+-free, images must be (beta^+, n)-free, with 1 < alpha < beta < 2.
struct SyncCheckParams {
    Rational alpha;
    Rational beta;
    std::size_t min_period = 1;

    SyncCheckParams(Rational a, Rational b, std::size_t n);
};

/// The lemma's word-length bound max(2b/(b-a), 2(q-1)(2b-1)/(q(b-1))) as an
/// exact rational; source words strictly shorter must be checked.
Rational sync_lemma_length_bound(const SyncCheckParams& p, std::size_t q);

/// Largest source length to enumerate: ceil(bound) - 1.
std::size_t sync_lemma_max_source_length(const SyncCheckParams& p, std::size_t q);

struct SyncLemmaViolation {
    Word source;           // the offending alpha^+-free source word
    Repetition repetition;  // violating repetition inside its image
};

struct SyncLemmaReport {
    bool synchronizing = false;
    std::optional<SyncCounterexample> sync_counterexample;
    Rational length_bound;
    std::size_t max_source_length = 0;
    bool passed = false;
    EnumStatus enumeration = EnumStatus::Completed;
    std::uint64_t words_checked = 0;
    std::optional<SyncLemmaViolation> violation;
};

/// Verifies the lemma hypothesis: every alpha^+-free source word shorter
/// than the length bound has a (beta^+, n)-free image. Streams the source
/// words depth-first instead of materializing them; the image check is
/// incremental (see ImageFreenessMonitor). Work is distributed over
/// subtrees; counts and the pass verdict are independent of thread count.
SyncLemmaReport check_sync_lemma(const UniformMorphism& m, const SyncCheckParams& p,
                                 std::uint64_t node_budget = 1'000'000'000ULL, int threads = 1);

/// Incremental (beta^+, n)-freeness watchdog for images of words under a
/// uniform morphism, fed one source letter at a time.
///
/// Detection is factor-complete rather than per-word: a violation is
/// reported at the source word where its maximal extension spans from the
/// first image block to the last. Since every factor of an enumerated free
/// word is itself enumerated, running the monitor over a factor-closed
/// word set detects a violation in some image iff one exists. A violation
/// ending in the last block with period p and trailing match run m
/// (m >= threshold(p)) always has m >= 8 once it must reach back across a
/// full block, so candidates for large periods come from an exact table of
/// 8-gram positions (two bits per letter; no hash collisions) and only
/// short periods near the start of a word need direct scanning.
class ImageFreenessMonitor {
public:
    ImageFreenessMonitor(const UniformMorphism& m, Rational beta, std::size_t min_period);

    /// Appends one source letter; false means a violation was found.
    bool push_letter(Letter source_letter);
    void pop_letter();

    std::size_t image_size() const { return image_.size(); }
    const std::optional<Repetition>& violation() const { return violation_; }
    void reset();

private:
    bool check_position(std::size_t t);
    bool fast_eligible() const { return target_size_ <= 4; }

    const UniformMorphism* morphism_;
    Rational beta_;
    std::size_t min_period_;
    std::size_t q_;
    int target_size_;

    // m*(p) = smallest violating run for period p; computed thresholds.
    std::size_t dense_period_max_ = 0; // largest p with m*(p) <= 7
    std::uint64_t beta_num_minus_den_ = 0;
    std::uint64_t beta_den_ = 1;

    std::vector<Letter> image_;
    std::vector<std::uint16_t> grams_;              // packed 8-grams per position
    std::vector<std::vector<std::int32_t>> table_;  // 8-gram -> positions, LIFO
    std::optional<Repetition> violation_;
};

} // namespace tangram
