#include "tangram/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tangram/bounds.hpp"
#include "tangram/cuts.hpp"
#include "tangram/freeness.hpp"

namespace tangram {

const char* const kImagePrefix = "13032103101230102013";

// Pinned when the data file was generated; see data/h.morph.
const char* const kMorphismDigestHex = "4ffffe53103afb42";

static const char* const kB4Prefix20 = "01210321012303210121";
static const char* const kFourTangramFactor = "03210123";
static const char* const kFiveTangramWord = "012130212321";

namespace {

const char* const kS4Names[21] = {
    "AA",       "ABACBC",   "ABCACB",   "ABCBAC",   "ABACBDCD", "ABACDBDC", "ABACDCBD",
    "ABCACDBD", "ABCADBDC", "ABCADCBD", "ABCADCDB", "ABCBADCD", "ABCBDACD", "ABCBDADC",
    "ABCBDCAD", "ABCDACBD", "ABCDADCB", "ABCDBADC", "ABCDBDAC", "ABCDCADB", "ABCDCBAD"};

struct RowSpec {
    const char* pattern;
    const char* reversed; // nullptr = self-reverse
    std::int64_t bound;
};

const RowSpec kRowSpecs[14] = {
    {"AA", nullptr, 16},         {"ABACBC", nullptr, 30},     {"ABCACB", "ABCBAC", 26},
    {"ABACBDCD", nullptr, 32},   {"ABACDBDC", "ABCBADCD", 40}, {"ABACDCBD", "ABCACDBD", 32},
    {"ABCADBDC", "ABCBDACD", 32}, {"ABCADCBD", nullptr, 28},   {"ABCADCDB", "ABCBDCAD", 32},
    {"ABCBDADC", nullptr, 32},   {"ABCDACBD", nullptr, 24},   {"ABCDADCB", "ABCDCBAD", 42},
    {"ABCDBADC", nullptr, 24},   {"ABCDBDAC", "ABCDCADB", 44}};

Json rational_json(const Rational& r) { return r.str(); }

Json repetition_json(const Repetition& r) {
    Json j;
    j["offset"] = r.offset;
    j["period"] = r.period;
    j["total_length"] = r.total_length;
    j["exponent"] = r.exponent().str();
    return j;
}

StageResult make_pass(const std::string& name, Json details = Json::object()) {
    return StageResult{name, StageStatus::Pass, std::move(details)};
}

StageResult make_fail(const std::string& name, Json details) {
    return StageResult{name, StageStatus::Fail, std::move(details)};
}

StageResult make_inconclusive(const std::string& name, Json details) {
    return StageResult{name, StageStatus::Inconclusive, std::move(details)};
}

} // namespace

int PipelineConfig::effective_threads() const {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

Json PipelineConfig::to_json() const {
    Json j;
    j["morphism_file"] = morphism_file;
    j["pattern_file"] = pattern_file;
    j["source_alpha"] = source_alpha.str();
    j["target_beta"] = target_beta.str();
    j["min_period"] = min_period;
    j["bound_cap"] = bound_cap;
    j["node_budget"] = node_budget;
    j["threads"] = threads;
    j["enforce_digest"] = enforce_digest;
    j["t3_prefix_length"] = t3_prefix_length;
    j["t3_image_cap"] = t3_image_cap;
    j["aux_length_limit"] = aux_length_limit;
    return j;
}

PipelineConfig PipelineConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    PipelineConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key=value");
        auto strip = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (key == "morphism_file") cfg.morphism_file = value;
        else if (key == "pattern_file") cfg.pattern_file = value;
        else if (key == "source_alpha") cfg.source_alpha = Rational::parse(value);
        else if (key == "target_beta") cfg.target_beta = Rational::parse(value);
        else if (key == "min_period") cfg.min_period = std::stoull(value);
        else if (key == "bound_cap") cfg.bound_cap = std::stoll(value);
        else if (key == "node_budget") cfg.node_budget = std::stoull(value);
        else if (key == "threads") cfg.threads = std::stoi(value);
        else if (key == "enforce_digest") cfg.enforce_digest = (value == "true" || value == "1");
        else if (key == "t3_prefix_length") cfg.t3_prefix_length = std::stoull(value);
        else if (key == "t3_image_cap") cfg.t3_image_cap = std::stoull(value);
        else if (key == "aux_length_limit") cfg.aux_length_limit = std::stoull(value);
        else throw std::runtime_error("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    return cfg;
}

bool VerificationReport::overall_pass() const {
    return std::all_of(stages.begin(), stages.end(),
                       [](const StageResult& s) { return s.passed(); });
}

int VerificationReport::exit_code() const {
    for (const auto& s : stages)
        if (s.status == StageStatus::Fail) return 1;
    for (const auto& s : stages)
        if (s.status == StageStatus::Inconclusive) return 3;
    return 0;
}

Json VerificationReport::to_json() const {
    Json j;
    j["title"] = title;
    j["overall"] = overall_pass() ? "pass" : (exit_code() == 3 ? "inconclusive" : "fail");
    j["config"] = config_echo;
    j["stages"] = Json::array();
    for (const auto& s : stages) {
        Json stage;
        stage["name"] = s.name;
        switch (s.status) {
            case StageStatus::Pass: stage["status"] = "pass"; break;
            case StageStatus::Fail: stage["status"] = "fail"; break;
            case StageStatus::Inconclusive: stage["status"] = "inconclusive"; break;
            case StageStatus::Skipped: stage["status"] = "skipped"; break;
        }
        stage["details"] = s.details;
        j["stages"].push_back(stage);
    }
    j["notes"] = notes;
    return j;
}

std::string VerificationReport::summary() const {
    std::ostringstream out;
    out << title << "\n";
    for (const auto& s : stages) {
        const char* tag = s.status == StageStatus::Pass          ? "PASS"
                          : s.status == StageStatus::Fail        ? "FAIL"
                          : s.status == StageStatus::Inconclusive ? "INCONCLUSIVE"
                                                                  : "SKIPPED";
        out << "  [" << tag << "] " << s.name;
        if (s.status != StageStatus::Pass) out << "  " << s.details.dump();
        out << "\n";
    }
    out << (overall_pass() ? "overall: pass" : (exit_code() == 3 ? "overall: inconclusive"
                                                                 : "overall: fail"))
        << "\n";
    return out.str();
}

const PatternSet& expected_s4() {
    static const PatternSet set = [] {
        PatternSet s;
        for (const char* name : kS4Names) s.patterns.push_back(Pattern::parse(name));
        return s;
    }();
    return set;
}

const std::vector<OccurrenceBoundRow>& occurrence_bound_rows() {
    static const std::vector<OccurrenceBoundRow> rows = [] {
        std::vector<OccurrenceBoundRow> out;
        for (const auto& spec : kRowSpecs) {
            OccurrenceBoundRow row{Pattern::parse(spec.pattern),
                                   spec.reversed ? std::optional<Pattern>(Pattern::parse(spec.reversed))
                                                 : std::nullopt,
                                   spec.bound};
            out.push_back(std::move(row));
        }
        return out;
    }();
    return rows;
}

Word five_tangram_example_word() { return Word::parse(kFiveTangramWord, Alphabet(4)); }

CutCertificate five_tangram_example_certificate() {
    // 0|1|213021|2|3|21 rearranged as 213021 | 2+1+3+0+21
    CutCertificate cert;
    cert.cuts = {1, 2, 8, 9, 10};
    cert.piece_copy = {1, 1, 0, 1, 1, 1};
    cert.copy_order[0] = {2};
    cert.copy_order[1] = {3, 1, 4, 0, 5};
    cert.common = Word::parse("213021", Alphabet(4));
    return cert;
}

namespace {

struct LoadedMorphism {
    std::optional<UniformMorphism> m;
    StageResult stage;
};

LoadedMorphism load_and_validate_h(const PipelineConfig& cfg) {
    LoadedMorphism out;
    Json details;
    details["file"] = cfg.morphism_file;
    UniformMorphism m = [&] {
        try {
            return load_morphism_file(cfg.morphism_file, cfg.enforce_digest);
        } catch (const std::exception& e) {
            details["error"] = e.what();
            throw;
        }
    }();

    auto fail = [&](const std::string& what, Json witness) {
        details["violated"] = what;
        details["witness"] = std::move(witness);
        out.stage = make_fail("load and validate morphism", details);
    };

    details["digest"] = morphism_digest_hex(m);
    if (cfg.enforce_digest && morphism_digest_hex(m) != kMorphismDigestHex) {
        fail("pinned content digest", Json{{"expected", kMorphismDigestHex},
                                           {"actual", morphism_digest_hex(m)}});
        return out;
    }
    if (m.source_size() != 6 || m.target_size() != 4 || m.image_length() != 312) {
        fail("shape (6 letters -> 4 letters, 312-uniform)",
             Json{{"source", m.source_size()},
                  {"target", m.target_size()},
                  {"image_length", m.image_length()}});
        return out;
    }
    if (!m.injective_on_letters()) {
        fail("images pairwise distinct", Json::object());
        return out;
    }
    const std::string prefix = kImagePrefix;
    for (int a = 0; a < m.source_size(); a++) {
        if (m.image(a).str().substr(0, prefix.size()) != prefix) {
            fail("common image prefix", Json{{"letter", a}, {"expected_prefix", prefix}});
            return out;
        }
    }
    details["image_length"] = m.image_length();
    details["common_prefix"] = prefix;
    out.stage = make_pass("load and validate morphism", details);
    out.m = std::move(m);
    return out;
}

StageResult stage_synchronizing(const UniformMorphism& m) {
    if (auto cex = is_synchronizing(m)) {
        Json witness;
        witness["a"] = cex->a;
        witness["b"] = cex->b;
        witness["c"] = cex->c;
        witness["offset"] = cex->offset;
        return make_fail("synchronization", Json{{"counterexample", witness}});
    }
    return make_pass("synchronization");
}

StageResult stage_s4_regeneration(const PipelineConfig& cfg) {
    PatternSet generated;
    if (cfg.pattern_file.empty()) {
        generated = generate_Sk(4);
    } else {
        std::ifstream in(cfg.pattern_file);
        if (!in)
            return make_fail("pattern set regeneration",
                             Json{{"error", "cannot open pattern file: " + cfg.pattern_file}});
        std::string line;
        while (std::getline(in, line))
            if (!line.empty() && line[0] != '#') generated.patterns.push_back(Pattern::parse(line));
    }
    const PatternSet& expected = expected_s4();
    auto as_sorted = [](const PatternSet& s) {
        std::vector<std::string> names;
        for (const auto& p : s.patterns) names.push_back(p.str());
        std::sort(names.begin(), names.end());
        return names;
    };
    auto gen = as_sorted(generated);
    auto exp = as_sorted(expected);
    Json details;
    details["generated_count"] = generated.patterns.size();
    if (gen != exp) {
        Json missing = Json::array(), extra = Json::array();
        for (const auto& name : exp)
            if (!std::binary_search(gen.begin(), gen.end(), name)) missing.push_back(name);
        for (const auto& name : gen)
            if (!std::binary_search(exp.begin(), exp.end(), name)) extra.push_back(name);
        details["missing"] = missing;
        details["extra"] = extra;
        return make_fail("pattern set regeneration", details);
    }
    return make_pass("pattern set regeneration", details);
}

StageResult stage_sync_lemma(const UniformMorphism& m, const PipelineConfig& cfg) {
    SyncCheckParams params(cfg.source_alpha, cfg.target_beta, cfg.min_period);
    SyncLemmaReport rep = check_sync_lemma(m, params, cfg.node_budget, cfg.effective_threads());
    Json details;
    details["length_bound"] = rational_json(rep.length_bound);
    details["max_source_length"] = rep.max_source_length;
    details["words_checked"] = rep.words_checked;
    if (!rep.synchronizing) {
        details["error"] = "morphism is not synchronizing";
        return make_fail("synchronization lemma hypothesis", details);
    }
    if (rep.violation) {
        details["violating_source_word"] = rep.violation->source.str();
        details["image_repetition"] = repetition_json(rep.violation->repetition);
        return make_fail("synchronization lemma hypothesis", details);
    }
    if (rep.enumeration == EnumStatus::BudgetExceeded) {
        details["error"] = "node budget exhausted";
        return make_inconclusive("synchronization lemma hypothesis", details);
    }
    return make_pass("synchronization lemma hypothesis", details);
}

// bound for every pattern in S_4, keyed by pattern text
std::optional<StageResult> compute_bound_failures(const PipelineConfig& cfg,
                                                  std::vector<std::pair<std::string, std::int64_t>>* out) {
    const auto& rows = occurrence_bound_rows();
    struct Task {
        Pattern pattern;
        std::int64_t expected;
    };
    std::vector<Task> tasks;
    for (const auto& row : rows) {
        tasks.push_back({row.pattern, row.bound});
        if (row.reversed) tasks.push_back({*row.reversed, row.bound});
        else tasks.push_back({reverse(row.pattern), row.bound}); // self-reverse must reproduce
    }
    std::atomic<std::size_t> next{0};
    std::mutex mtx;
    Json failures = Json::array();
    std::vector<std::pair<std::string, std::int64_t>> computed(tasks.size());
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            auto result = max_occurrence_length(tasks[i].pattern, cfg.target_beta, cfg.min_period,
                                                cfg.bound_cap);
            std::int64_t got = result ? result->bound : -1;
            computed[i] = {tasks[i].pattern.str(), got};
            if (got != tasks[i].expected) {
                std::lock_guard<std::mutex> lock(mtx);
                failures.push_back(Json{{"pattern", tasks[i].pattern.str()},
                                        {"expected", tasks[i].expected},
                                        {"computed", got}});
            }
        }
    };
    std::vector<std::thread> pool;
    int nthreads = cfg.effective_threads();
    for (int i = 0; i < nthreads; i++) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    *out = computed;
    if (!failures.empty()) {
        return make_fail("occurrence-length bound table", Json{{"mismatches", failures}});
    }
    return std::nullopt;
}

StageResult stage_bound_table(const PipelineConfig& cfg) {
    std::vector<std::pair<std::string, std::int64_t>> computed;
    if (auto failed = compute_bound_failures(cfg, &computed)) return *failed;
    Json values = Json::object();
    for (const auto& [name, bound] : computed) values[name] = bound;
    Json details;
    details["alpha"] = cfg.target_beta.str();
    details["min_period"] = cfg.min_period;
    details["cap"] = cfg.bound_cap;
    details["bounds"] = values;
    return make_pass("occurrence-length bound table", details);
}

StageResult stage_occurrence_check(const UniformMorphism& m, const PipelineConfig& cfg) {
    // Bound per pattern, from the published rows.
    std::vector<std::pair<Pattern, std::int64_t>> patterns;
    for (const auto& row : occurrence_bound_rows()) {
        patterns.emplace_back(row.pattern, row.bound);
        if (row.reversed) patterns.emplace_back(*row.reversed, row.bound);
    }
    std::sort(patterns.begin(), patterns.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    // Every ordered pair of distinct letters; each must itself be free.
    FreenessParams pair_params(cfg.source_alpha, 1);
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < m.source_size(); x++)
        for (int y = 0; y < m.source_size(); y++) {
            if (x == y) continue;
            Letter two[2] = {static_cast<Letter>(x), static_cast<Letter>(y)};
            if (is_free(two, 2, pair_params)) pairs.emplace_back(x, y);
        }

    struct Unit {
        std::size_t pair_index;
        std::size_t pattern_index;
    };
    std::vector<Unit> units;
    for (std::size_t pi = 0; pi < pairs.size(); pi++)
        for (std::size_t qi = 0; qi < patterns.size(); qi++) units.push_back({pi, qi});

    std::vector<Word> windows;
    windows.reserve(pairs.size());
    for (auto [x, y] : pairs) windows.push_back(m.image(x) + m.image(y));

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_failed{units.size()};
    std::atomic<std::uint64_t> anchors_scanned{0};
    std::mutex mtx;
    std::vector<std::pair<std::size_t, Json>> failures;

    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= units.size()) return;
            if (i > first_failed.load()) continue;
            const Word& window = windows[units[i].pair_index];
            const auto& [pattern, bound] = patterns[units[i].pattern_index];
            auto occ = find_occurrence(pattern, window, static_cast<std::size_t>(bound));
            if (occ) {
                Json witness;
                witness["pair"] = {pairs[units[i].pair_index].first,
                                   pairs[units[i].pair_index].second};
                witness["pattern"] = pattern.str();
                witness["offset"] = occ->offset;
                witness["assignment"] = occ->assignment.str();
                std::lock_guard<std::mutex> lock(mtx);
                std::size_t cur = first_failed.load();
                while (i < cur && !first_failed.compare_exchange_weak(cur, i)) {}
                failures.emplace_back(i, std::move(witness));
            } else {
                anchors_scanned.fetch_add(window.size());
            }
        }
    };
    std::vector<std::thread> pool;
    int nthreads = cfg.effective_threads();
    for (int i = 0; i < nthreads; i++) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    Json details;
    details["pairs"] = pairs.size();
    details["patterns"] = patterns.size();
    if (!failures.empty()) {
        auto best = std::min_element(failures.begin(), failures.end(),
                                     [](const auto& a, const auto& b) { return a.first < b.first; });
        details["occurrence"] = best->second;
        return make_fail("exhaustive occurrence check", details);
    }
    const std::uint64_t expected_tasks =
        static_cast<std::uint64_t>(pairs.size()) * 2 * m.image_length() * patterns.size();
    details["search_tasks_expected"] = expected_tasks;
    details["search_tasks_completed"] = anchors_scanned.load();
    if (anchors_scanned.load() != expected_tasks) {
        details["error"] = "coverage shortfall";
        return make_fail("exhaustive occurrence check", details);
    }
    return make_pass("exhaustive occurrence check", details);
}

} // namespace

VerificationReport verify_t4(const PipelineConfig& config) {
    VerificationReport report;
    report.title = "verify-t4: images of 6/5+-free words avoid 4-tangrams";
    report.config_echo = config.to_json();
    report.notes.push_back(
        "window policy: occurrences are searched inside all two-letter image windows, "
        "a superset of the windows reachable from long free words");
    report.notes.push_back("cut certificates never reverse pieces");

    LoadedMorphism loaded = [&] {
        try {
            return load_and_validate_h(config);
        } catch (const std::exception& e) {
            LoadedMorphism out;
            out.stage = make_fail("load and validate morphism", Json{{"error", e.what()}});
            return out;
        }
    }();
    report.stages.push_back(loaded.stage);
    if (!loaded.stage.passed() || !loaded.m) return report;
    const UniformMorphism& m = *loaded.m;

    report.stages.push_back(stage_synchronizing(m));
    if (!report.stages.back().passed()) return report;

    report.stages.push_back(stage_s4_regeneration(config));
    if (!report.stages.back().passed()) return report;

    report.stages.push_back(stage_sync_lemma(m, config));
    if (!report.stages.back().passed()) return report;

    report.stages.push_back(stage_bound_table(config));
    if (!report.stages.back().passed()) return report;

    report.stages.push_back(stage_occurrence_check(m, config));
    return report;
}

VerificationReport verify_t3_via_b4(const PipelineConfig& config) {
    VerificationReport report;
    report.title = "verify-t3: fixed-point prefix avoids S_3 (finite spot-check)";
    report.config_echo = config.to_json();
    report.notes.push_back(
        "finite corroboration only: the avoidance claims are checked on a prefix, not proved");

    const std::size_t L = config.t3_prefix_length;
    UniformMorphism b4 = b4_morphism();
    Word prefix = fixed_point_prefix(b4, 0, L);

    {
        Json details;
        details["length"] = L;
        if (L >= 20) {
            std::string head = prefix.factor(0, 20).str();
            details["prefix20"] = head;
            if (head != kB4Prefix20) {
                details["expected"] = kB4Prefix20;
                report.stages.push_back(make_fail("fixed-point prefix", details));
                return report;
            }
        }
        report.stages.push_back(make_pass("fixed-point prefix", details));
    }

    {
        Json details;
        Word factor = Word::parse(kFourTangramFactor, Alphabet(4));
        const auto& hay = prefix.letters();
        const auto& needle = factor.letters();
        auto it = std::search(hay.begin(), hay.end(), needle.begin(), needle.end());
        if (it == hay.end()) {
            details["error"] = "factor not found in prefix";
            details["factor"] = kFourTangramFactor;
            report.stages.push_back(make_fail("known 4-tangram factor", details));
            return report;
        }
        std::size_t offset = static_cast<std::size_t>(it - hay.begin());
        details["factor"] = kFourTangramFactor;
        details["first_offset"] = offset;
        details["minimal_prefix_length"] = offset + needle.size();
        bool is4 = cut_number_via_patterns(factor, 4);
        bool is3 = cut_number_via_patterns(factor, 3);
        auto oracle = cut_number_oracle(factor, 4);
        details["is_4_tangram"] = is4;
        details["is_3_tangram"] = is3;
        details["oracle_cut_number"] = oracle ? Json(oracle->first) : Json(nullptr);
        if (!is4 || is3 || !oracle || oracle->first != 4) {
            report.stages.push_back(make_fail("known 4-tangram factor", details));
            return report;
        }
        report.stages.push_back(make_pass("known 4-tangram factor", details));
    }

    {
        Json details;
        PatternSet s3 = generate_Sk(3);
        details["patterns"] = Json::array();
        for (const auto& p : s3.patterns) details["patterns"].push_back(p.str());
        for (const auto& p : s3.patterns) {
            auto occ = find_occurrence_parallel(p, prefix, std::nullopt,
                                                config.effective_threads());
            if (occ) {
                details["pattern"] = p.str();
                details["offset"] = occ->offset;
                details["assignment"] = occ->assignment.str();
                report.stages.push_back(make_fail("no S_3 occurrence in prefix", details));
                return report;
            }
        }
        report.stages.push_back(make_pass("no S_3 occurrence in prefix", details));
    }

    {
        Json details;
        Formula f3 = Formula::parse("AB.BA.AC.CA.BC");
        details["formula"] = f3.str();
        details["image_cap"] = config.t3_image_cap;
        auto occ = find_formula_occurrence(f3, prefix, config.t3_image_cap);
        if (occ) {
            details["assignment"] = occ->str();
            report.stages.push_back(make_fail("no formula occurrence in prefix", details));
            return report;
        }
        report.stages.push_back(make_pass("no formula occurrence in prefix", details));
    }
    return report;
}

namespace {

struct AuxSearchResult {
    std::size_t longest = 0;
    bool survived = false;
    std::uint64_t nodes = 0;
    bool budget_exceeded = false;
};

// Depth-first longest-word search with an arbitrary last-letter validity
// test (new constraints must involve the final letter).
template <class Valid>
AuxSearchResult aux_longest(int q, std::size_t length_limit, std::uint64_t budget,
                            const Valid& valid) {
    AuxSearchResult res;
    std::vector<Letter> word;
    word.reserve(length_limit);
    std::function<bool(void)> dfs = [&]() -> bool {
        if (word.size() >= length_limit) {
            res.survived = true;
            return false;
        }
        for (int a = 0; a < q; a++) {
            word.push_back(static_cast<Letter>(a));
            if (res.nodes >= budget) {
                res.budget_exceeded = true;
                word.pop_back();
                return false;
            }
            res.nodes++;
            if (valid(word.data(), word.size())) {
                res.longest = std::max(res.longest, word.size());
                if (!dfs()) { word.pop_back(); return false; }
            }
            word.pop_back();
        }
        return true;
    };
    dfs();
    return res;
}

} // namespace

VerificationReport verify_auxiliary_claims(const PipelineConfig& config) {
    VerificationReport report;
    report.title = "verify-aux: auxiliary backtracking exhaustions";
    report.config_echo = config.to_json();

    {
        Json details;
        EnumLimits limits;
        limits.node_budget = config.node_budget;
        EnumResult res = enumerate_free(2, FreenessParams(Rational(2), 1), 10, limits);
        details["alphabet"] = 2;
        details["longest"] = res.longest;
        if (res.status == EnumStatus::BudgetExceeded) {
            report.stages.push_back(make_inconclusive("binary square-free maximal length", details));
            return report;
        }
        if (res.longest != 3 || res.survived_to_limit) {
            details["expected_longest"] = 3;
            report.stages.push_back(make_fail("binary square-free maximal length", details));
            return report;
        }
        report.stages.push_back(make_pass("binary square-free maximal length", details));
    }

    {
        Json details;
        auto valid = [](const Letter* w, std::size_t len) {
            std::size_t t = len - 1;
            if (t >= 2 && w[t] == w[t - 2]) return false; // factor xyx
            return !has_k_tangram_suffix(w, len, 4);
        };
        AuxSearchResult res = aux_longest(4, config.aux_length_limit, config.node_budget, valid);
        details["alphabet"] = 4;
        details["avoids"] = "4-tangram factors and all factors xyx";
        details["nodes"] = res.nodes;
        details["longest"] = res.longest;
        if (res.budget_exceeded || res.survived) {
            details["error"] = res.budget_exceeded ? "node budget exhausted"
                                                   : "length limit reached without dying out";
            report.stages.push_back(
                make_inconclusive("4-tangram avoidance forces a factor xyx", details));
            return report;
        }
        report.stages.push_back(make_pass("4-tangram avoidance forces a factor xyx", details));
    }

    {
        Json details;
        FreenessParams seven_fifths(Rational(7, 5), 1);
        auto valid = [&](const Letter* w, std::size_t len) {
            if (violation_ending_at(w, len - 1, seven_fifths)) return false;
            return !has_k_tangram_suffix(w, len, 4);
        };
        AuxSearchResult res = aux_longest(4, config.aux_length_limit, config.node_budget, valid);
        details["alphabet"] = 4;
        details["avoids"] = "4-tangram factors, repetitions of exponent > 7/5";
        details["nodes"] = res.nodes;
        details["longest"] = res.longest;
        if (res.budget_exceeded || res.survived) {
            details["error"] = res.budget_exceeded ? "node budget exhausted"
                                                   : "length limit reached without dying out";
            report.stages.push_back(
                make_inconclusive("7/5+-free words contain a 4-tangram", details));
            return report;
        }
        report.stages.push_back(make_pass("7/5+-free words contain a 4-tangram", details));
    }
    return report;
}

VerificationReport check_5tangram_example(const PipelineConfig& config) {
    VerificationReport report;
    report.title = "check-5tangram: the 12-letter example factor";
    report.config_echo = config.to_json();
    report.notes.push_back("cut certificates never reverse pieces");

    Word w = five_tangram_example_word();

    {
        Json details;
        details["word"] = w.str();
        details["is_tangram"] = is_tangram(w);
        if (!is_tangram(w)) {
            report.stages.push_back(make_fail("tangram parity", details));
            return report;
        }
        report.stages.push_back(make_pass("tangram parity", details));
    }

    {
        Json details;
        CutCertificate cert = five_tangram_example_certificate();
        details["certificate"] = cert.str(w);
        if (!cert.validate(w)) {
            report.stages.push_back(make_fail("published 5-cut certificate", details));
            return report;
        }
        report.stages.push_back(make_pass("published 5-cut certificate", details));
    }

    {
        Json details;
        auto at_most_4 = cut_number_oracle(w, 4);
        if (at_most_4) {
            details["unexpected_cut_number"] = at_most_4->first;
            details["certificate"] = at_most_4->second.str(w);
            report.stages.push_back(make_fail("cut number exactly 5", details));
            return report;
        }
        auto exact = cut_number_oracle(w, 5);
        details["cut_number"] = exact ? Json(exact->first) : Json(nullptr);
        if (!exact || exact->first != 5 || !exact->second.validate(w)) {
            report.stages.push_back(make_fail("cut number exactly 5", details));
            return report;
        }
        details["oracle_certificate"] = exact->second.str(w);
        report.stages.push_back(make_pass("cut number exactly 5", details));
    }

    {
        Json details;
        try {
            UniformMorphism m = load_morphism_file(config.morphism_file, config.enforce_digest);
            bool found = false;
            for (int a = 0; a < m.source_size() && !found; a++) {
                const auto& img = m.image(a).letters();
                const auto& needle = w.letters();
                auto it = std::search(img.begin(), img.end(), needle.begin(), needle.end());
                if (it != img.end()) {
                    details["image_letter"] = a;
                    details["offset"] = static_cast<std::size_t>(it - img.begin());
                    found = true;
                }
            }
            if (!found) {
                details["error"] = "factor not found in any single image";
                report.stages.push_back(make_fail("occurs in an image", details));
                return report;
            }
            report.stages.push_back(make_pass("occurs in an image", details));
        } catch (const std::exception& e) {
            details["error"] = e.what();
            report.stages.push_back(make_fail("occurs in an image", details));
            return report;
        }
    }
    return report;
}

} // namespace tangram
