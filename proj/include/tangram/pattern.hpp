#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tangram/word.hpp"

namespace tangram {

/// Pattern over the variable alphabet {A, B, C, ...}, stored as 0-based
/// variable indices. Patterns are kept in canonical form: variables first
/// appear in alphabetical order (ABACBC is canonical, BABCAC is not).
class Pattern {
public:
    Pattern() = default;

    /// Parses uppercase letters; throws if the text is not canonical.
    static Pattern parse(const std::string& text);
    /// Relabels arbitrary variable indices into canonical form.
    static Pattern canonicalize(const std::vector<std::uint8_t>& vars);

    std::size_t length() const { return vars_.size(); }
    int variable_count() const { return nvars_; }
    std::uint8_t operator[](std::size_t i) const { return vars_[i]; }
    const std::vector<std::uint8_t>& vars() const { return vars_; }

    /// The pattern read as a word over Sigma_{variable_count}.
    Word as_word() const;

    /// True iff every variable occurs exactly twice.
    bool doubled_exactly_twice() const;

    std::string str() const;
    bool operator==(const Pattern& o) const { return vars_ == o.vars_; }
    bool operator!=(const Pattern& o) const { return !(*this == o); }
    bool operator<(const Pattern& o) const;

private:
    explicit Pattern(std::vector<std::uint8_t> vars);

    std::vector<std::uint8_t> vars_;
    int nvars_ = 0;
};

/// Letters reversed, then re-canonicalized.
Pattern reverse(const Pattern& p);

/// Non-erasing assignment of words to pattern variables.
struct VariableAssignment {
    std::vector<Word> images; // indexed by variable

    Word apply(const Pattern& p) const;
    std::string str() const; // "A=ab B=c ..."
};

struct Occurrence {
    std::size_t offset = 0;
    VariableAssignment assignment;
};

/// Searches for an occurrence of P in w: a non-erasing assignment m with
/// m(P) a factor of w. If max_image_total is given, only occurrences with
/// |m(P)| <= max_image_total are considered. Deterministic: smallest
/// offset, then lexicographically smallest image lengths.
std::optional<Occurrence> find_occurrence(const Pattern& p, const Word& w,
                                          std::optional<std::size_t> max_image_total = {});

/// Same search restricted to occurrences starting at the given offset.
std::optional<Occurrence> find_occurrence_at(const Pattern& p, const Word& w, std::size_t offset,
                                             std::optional<std::size_t> max_image_total = {});

/// Multi-threaded sweep over anchor offsets. Returns the occurrence with
/// the smallest offset (ties by image lengths), independent of thread count.
std::optional<Occurrence> find_occurrence_parallel(const Pattern& p, const Word& w,
                                                   std::optional<std::size_t> max_image_total,
                                                   int threads);

/// All distinct factor spans (offset, length) of w that arise as m(P).
std::vector<std::pair<std::size_t, std::size_t>> occurrence_spans(
    const Pattern& p, const Word& w, std::optional<std::size_t> max_image_total = {});

/// Exact match: an assignment with m(P) = w (not just a factor).
std::optional<VariableAssignment> exact_pattern_match(const Pattern& p, const Word& w);
std::optional<VariableAssignment> exact_pattern_match(const Pattern& p, const Letter* w,
                                                      std::size_t len);

/// True iff q has an occurrence in p read as a word.
bool pattern_contains(const Pattern& p, const Pattern& q);

/// Formula: fragments over a shared variable alphabet ('.' separates
/// fragments). Fragments need not be individually canonical; the formula
/// as a whole is canonicalized on parse. No variable may be isolated
/// (occur only once in the whole formula).
class Formula {
public:
    static Formula parse(const std::string& text);

    int variable_count() const { return nvars_; }
    const std::vector<std::vector<std::uint8_t>>& fragments() const { return fragments_; }
    std::string str() const;

private:
    std::vector<std::vector<std::uint8_t>> fragments_;
    int nvars_ = 0;
};

/// Searches for an assignment (images nonempty, length <= max_image_len)
/// under which every fragment image is a factor of w, in any order.
std::optional<VariableAssignment> find_formula_occurrence(const Formula& f, const Word& w,
                                                          std::size_t max_image_len);

/// All canonical patterns with exactly j variables, each occurring exactly
/// twice (length 2j). There are (2j-1)!! of them, in lexicographic order.
std::vector<Pattern> doubled_patterns(int j);

struct PatternSet {
    std::vector<Pattern> patterns;

    bool operator==(const PatternSet& o) const { return patterns == o.patterns; }
    std::string str() const;
};

/// The minimal set S_k: all canonical patterns with at most k variables,
/// each occurring exactly twice, that contain no occurrence of a smaller
/// such pattern. Avoiding S_k is equivalent to avoiding k-tangrams.
/// Validated against published lists for k <= 4; larger k is permitted but
/// unvalidated.
PatternSet generate_Sk(int k);

} // namespace tangram
