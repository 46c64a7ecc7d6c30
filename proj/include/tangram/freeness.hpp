#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tangram/rational.hpp"
#include "tangram/word.hpp"

namespace tangram {

/// A repetition is a factor x with x[i] = x[i + period] for all valid i
/// and total_length > period. Its exponent total_length/period may exceed 2
/// (e.g. "ababa" has period 2 and exponent 5/2).
struct Repetition {
    std::size_t offset = 0;
    std::size_t period = 0;
    std::size_t total_length = 0;

    Rational exponent() const {
        return Rational(static_cast<std::int64_t>(total_length),
                        static_cast<std::int64_t>(period));
    }
};

/// Parameters of (alpha^+, n)-freeness: no repetition with period >= n and
/// exponent strictly greater than alpha. n = 1 gives plain alpha^+-freeness.
struct FreenessParams {
    Rational alpha{2, 1};
    std::size_t min_period = 1;

    FreenessParams() = default;
    FreenessParams(Rational a, std::size_t n);
};

/// Searches w for a repetition with period >= n and exponent > alpha.
/// Returns the first witness in (period, offset) scan order, or nullopt if
/// w is (alpha^+, n)-free in the strict sense.
std::optional<Repetition> find_violation(const Word& w, const FreenessParams& p);
std::optional<Repetition> find_violation(const Letter* w, std::size_t len,
                                         const FreenessParams& p);

/// True iff w has no factor uu with u nonempty.
bool is_square_free(const Word& w);
bool is_square_free(const Letter* w, std::size_t len);

/// The freeness predicate used by the enumerators. Strict exponent
/// comparison, with one boundary convention: at alpha = 2 exactly,
/// repetitions of exponent exactly 2 (squares) with period >= n also count
/// as violations, so that alpha = 2, n = 1 means plain square-freeness.
bool is_free(const Word& w, const FreenessParams& p);
bool is_free(const Letter* w, std::size_t len, const FreenessParams& p);

/// Smallest trailing-match count m that makes a repetition of period p a
/// violation under params (the caller checks w[t-j] == w[t-j-p] for j < m).
/// Exposed for the incremental checkers.
std::size_t violation_run_threshold(std::size_t period, const FreenessParams& p);

/// True iff a violation ending exactly at position t exists (positions
/// 0..t of w are valid). This is the last-letter pruning test: extending a
/// free word by one letter creates a violation iff one ends at the new
/// position.
bool violation_ending_at(const Letter* w, std::size_t t, const FreenessParams& p);

enum class EnumStatus { Completed, BudgetExceeded, Aborted };

struct EnumLimits {
    std::uint64_t node_budget = 1'000'000'000ULL;
};

struct EnumResult {
    EnumStatus status = EnumStatus::Completed;
    /// Number of free words of length exactly L (count mode; also filled
    /// by the other modes when cheap).
    std::uint64_t count_at_length = 0;
    /// Total free nonempty words of length <= L seen.
    std::uint64_t words_visited = 0;
    /// Longest length reached.
    std::size_t longest = 0;
    /// True if some branch survived to depth L (longest == L).
    bool survived_to_limit = false;
};

/// Visitor for the depth-first enumeration of free words. on_push is called
/// after each valid extension with the whole current word; returning false
/// aborts the enumeration (status Aborted). on_pop undoes one letter.
struct EnumVisitor {
    std::function<bool(const Letter*, std::size_t)> on_push;
    std::function<void()> on_pop;
};

/// Depth-first backtracking enumeration of the (alpha^+, n)-free words over
/// Sigma_q of length <= L, pruning on violations that end at the last
/// letter. Counts are exact and match the brute-force filter over all q^L
/// words. An optional initial prefix (which must itself be free) roots the
/// search at an interior node; visitor callbacks see the full word
/// including the prefix but pushes/pops below the prefix only.
EnumResult enumerate_free(int q, const FreenessParams& p, std::size_t L,
                          const EnumLimits& limits = {},
                          const EnumVisitor* visitor = nullptr,
                          const std::vector<Letter>& prefix = {});

} // namespace tangram
