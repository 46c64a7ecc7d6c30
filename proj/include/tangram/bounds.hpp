#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tangram/pattern.hpp"
#include "tangram/rational.hpp"

namespace tangram {

/// Integer linear form over per-variable image lengths.
struct LinearForm {
    std::vector<std::int64_t> coeffs; // indexed by variable

    std::int64_t eval(const std::vector<std::int64_t>& lengths) const;
    std::string str() const; // e.g. "3a - b - c - d"
};

/// One disjunctive constraint per variable of a doubled pattern: the factor
/// between (and including) the two occurrences of Y is a repetition, so in
/// a (alpha^+, n)-free word either its period is at most n-1 or its
/// exponent is at most alpha.
struct DisjunctiveConstraint {
    int variable = 0;               // the generating variable
    std::size_t span_begin = 0;     // slot of its first occurrence
    std::size_t span_end = 0;       // slot of its second occurrence
    LinearForm period_sum;          // period clause: period_sum . x <= period_cap
    std::int64_t period_cap = 0;
    LinearForm exponent_form;       // exponent clause: exponent_form . x <= 0

    /// Divides both forms by their gcds; comparisons happen on normalized
    /// clauses.
    void normalize();
    bool satisfied(const std::vector<std::int64_t>& lengths) const;
    std::string str() const;
};

struct ConstraintSystem {
    Pattern pattern;
    Rational alpha;
    std::size_t min_period = 1;
    std::vector<DisjunctiveConstraint> constraints; // one per variable, ascending
};

/// Derives the constraint system of a doubled pattern (every variable
/// exactly twice). Throws if the pattern is not doubled exactly twice.
ConstraintSystem derive_constraints(const Pattern& p, Rational alpha, std::size_t min_period);

struct BoundResult {
    std::int64_t bound = 0;                // max of |m(P)| = 2 * sum of lengths
    std::vector<std::int64_t> witness;     // a maximizing length assignment
};

/// Maximum of 2 * (sum of image lengths) over assignments with every length
/// in [1, cap) satisfying all constraints, by branch-and-bound nested loops
/// (descending, so the incumbent prunes early); exhaustive within the cap.
/// nullopt if no assignment is feasible.
std::optional<BoundResult> max_occurrence_length(const ConstraintSystem& cs, std::int64_t cap);
std::optional<BoundResult> max_occurrence_length(const Pattern& p, Rational alpha,
                                                 std::size_t min_period, std::int64_t cap);

/// Searches for small nonnegative integer multipliers proving the
/// all-exponent-clause branch infeasible: the combination of the exponent
/// clauses (each "form . x <= 0") must have all coefficients >= 0 and some
/// coefficient > 0, contradicting positive lengths. Multipliers range over
/// [0, max_multiplier]^k.
std::optional<std::vector<std::int64_t>> infeasibility_witness(const ConstraintSystem& cs,
                                                               std::int64_t max_multiplier = 20);

/// True iff the multipliers certify infeasibility as described above.
bool validates_infeasibility(const ConstraintSystem& cs,
                             const std::vector<std::int64_t>& multipliers);

} // namespace tangram
