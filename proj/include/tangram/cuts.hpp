#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tangram/pattern.hpp"
#include "tangram/word.hpp"

namespace tangram {

/// Witness that a word is a tangram with a given number of cuts: cutting at
/// the interior positions yields pieces; each piece goes to one of two
/// copies; concatenating each copy's pieces in the stated order yields the
/// same word. Pieces are never reversed (mirror arrangements are not part
/// of the model; reports record this assumption).
struct CutCertificate {
    std::vector<std::size_t> cuts;        // interior cut positions, ascending
    std::vector<int> piece_copy;          // 0 or 1 per piece
    std::vector<std::size_t> copy_order[2]; // piece indices in concatenation order
    Word common;                          // the word each copy spells

    std::size_t piece_count() const { return cuts.size() + 1; }
    /// Replays the certificate against w.
    bool validate(const Word& w) const;
    /// Stable text form: "piece|piece|...  copy1=i+j+..., copy2=..."
    std::string str(const Word& w) const;
};

struct TangramClassification {
    Word word;
    std::optional<int> cut_number; // absent for non-tangrams or cut number > max_k
    std::optional<CutCertificate> certificate;
};

/// Least k <= max_k such that w admits a k-cut certificate, with the first
/// certificate in (k, cut positions, copy assignment, orderings) order.
/// Exponential search; enforces |w| <= 16.
std::optional<std::pair<int, CutCertificate>> cut_number_oracle(const Word& w, int max_k);

TangramClassification classify_tangram(const Word& w, int max_k);

/// Pattern route: true iff some pattern with at most k variables, each
/// occurring exactly twice, matches w exactly (w = m(P)). Equivalent to
/// "w is a k-tangram"; the equivalence with the cuts route is tested, not
/// assumed.
bool cut_number_via_patterns(const Word& w, int k);
bool cut_number_via_patterns(const Letter* w, std::size_t len, int k);

/// True iff some suffix of w[0..len) ending at the last letter is a
/// k-tangram. Used by backtracking searches that prune on the last letter.
bool has_k_tangram_suffix(const Letter* w, std::size_t len, int k);

/// Factor spans of w that are occurrences of S_k patterns; each such span
/// is itself a k-tangram. Spans are distinct and sorted.
std::vector<std::pair<std::size_t, std::size_t>> scan_k_tangram_factors(const Word& w, int k);

} // namespace tangram
