#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tangram/cuts.hpp"
#include "tangram/morphism.hpp"
#include "tangram/pattern.hpp"
#include "tangram/rational.hpp"

namespace tangram {

using Json = nlohmann::ordered_json;

/// All pipeline parameters in one place; the defaults replay the published
/// construction exactly.
struct PipelineConfig {
    std::string morphism_file = "data/h.morph";
    std::string pattern_file; // empty = regenerate the pattern set
    Rational source_alpha{6, 5};
    Rational target_beta{5, 4};
    std::size_t min_period = 9;
    std::int64_t bound_cap = 100;
    std::uint64_t node_budget = 1'000'000'000ULL;
    int threads = 0; // 0 = hardware concurrency
    bool enforce_digest = true;
    std::size_t t3_prefix_length = 10000;
    std::size_t t3_image_cap = 8;
    std::size_t aux_length_limit = 2000; // depth cap for the auxiliary backtrackings

    int effective_threads() const;
    Json to_json() const;

    /// Plain key-value file ("key = value", '#' comments). Unknown keys are
    /// an error; every key is optional and defaults to the paper's value.
    static PipelineConfig load(const std::string& path);
};

enum class StageStatus { Pass, Fail, Inconclusive, Skipped };

struct StageResult {
    std::string name;
    StageStatus status = StageStatus::Pass;
    Json details; // counts, witnesses, derived values

    bool passed() const { return status == StageStatus::Pass; }
};

struct VerificationReport {
    std::string title;
    Json config_echo;
    std::vector<StageResult> stages;
    std::vector<std::string> notes;

    bool overall_pass() const;
    /// 0 all-pass, 1 verification failure, 3 budget exhausted.
    int exit_code() const;
    Json to_json() const;
    std::string summary() const;
};

/// The expected minimal pattern set for 4-tangram avoidance (21 patterns).
const PatternSet& expected_s4();

struct OccurrenceBoundRow {
    Pattern pattern;
    std::optional<Pattern> reversed; // nullopt = self-reverse
    std::int64_t bound;
};

/// The 14 published (pattern, reverse, occurrence bound) rows.
const std::vector<OccurrenceBoundRow>& occurrence_bound_rows();

/// Common prefix that heads every image of the 312-uniform morphism.
extern const char* const kImagePrefix;

/// Pinned digest of the shipped morphism data file content.
extern const char* const kMorphismDigestHex;

/// The 12-letter 5-tangram factor discussed alongside the construction,
/// and its published 5-cut decomposition.
Word five_tangram_example_word();
CutCertificate five_tangram_example_certificate();

/// Replays the complete machine check that images of 6/5+-free words over
/// Sigma_6 avoid 4-tangrams: loads and validates the morphism, checks
/// synchronization, regenerates S_4, runs the synchronization-lemma
/// hypothesis check, reproduces the occurrence-length bound table, and
/// performs the exhaustive occurrence search over two-letter image windows.
/// Stages run in order and the first failure halts with a witness.
VerificationReport verify_t4(const PipelineConfig& config = {});

/// Finite corroboration on a fixed-point prefix: the prefix matches the
/// published start, contains the known 4-tangram factor, and contains no
/// occurrence of any S_3 pattern and no formula occurrence within the
/// image cap. Explicitly a finite spot-check, not a proof.
VerificationReport verify_t3_via_b4(const PipelineConfig& config = {});

/// Three backtracking exhaustions: binary square-free words die at length
/// 4; words over Sigma_4 avoiding 4-tangrams and all factors xyx have a
/// finite maximal length; 7/5+-free words over Sigma_4 avoiding 4-tangrams
/// have a finite maximal length. The last two lengths are discovered
/// outputs recorded in the report.
VerificationReport verify_auxiliary_claims(const PipelineConfig& config = {});

/// Confirms the 12-letter example: it is a tangram, the published 5-cut
/// decomposition validates, no certificate with at most 4 cuts exists, and
/// it occurs inside an image of the morphism.
VerificationReport check_5tangram_example(const PipelineConfig& config = {});

} // namespace tangram
