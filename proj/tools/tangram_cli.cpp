// Command-line front end: freeness checks, free-word enumeration, minimal
// pattern sets, cut numbers, morphism verification, and the full proof
// replay pipelines.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tangram/bounds.hpp"
#include "tangram/cuts.hpp"
#include "tangram/freeness.hpp"
#include "tangram/morphism.hpp"
#include "tangram/pattern.hpp"
#include "tangram/pipeline.hpp"

using namespace tangram;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

void write_report(const VerificationReport& report, const std::string& json_path) {
    std::cout << report.summary();
    if (!json_path.empty()) {
        if (json_path == "-") {
            std::cout << report.to_json().dump(2) << "\n";
        } else {
            std::ofstream out(json_path);
            out << report.to_json().dump(2) << "\n";
        }
    }
}

int run_check_free(const std::string& alpha_text, std::size_t min_period) {
    FreenessParams params(Rational::parse(alpha_text), min_period);
    std::string line;
    bool any_violation = false;
    while (std::getline(std::cin, line)) {
        if (line.empty()) continue;
        Word w = Word::parse(line);
        auto rep = find_violation(w, params);
        if (rep) {
            any_violation = true;
            std::cout << line << ": violation offset=" << rep->offset
                      << " period=" << rep->period << " length=" << rep->total_length
                      << " exponent=" << rep->exponent().str() << "\n";
        } else {
            std::cout << line << ": (" << params.alpha.str() << "+,"
                      << params.min_period << ")-free\n";
        }
    }
    return any_violation ? kExitFail : kExitPass;
}

int run_enumerate(int q, const std::string& alpha_text, std::size_t min_period, std::size_t len,
                  const std::string& mode, std::uint64_t budget) {
    FreenessParams params(Rational::parse(alpha_text), min_period);
    EnumLimits limits;
    limits.node_budget = budget;
    EnumResult res = enumerate_free(q, params, len, limits);
    if (res.status == EnumStatus::BudgetExceeded) {
        std::cerr << "node budget exhausted after " << res.words_visited << " words\n";
        return kExitBudget;
    }
    if (mode == "count") {
        std::cout << res.count_at_length << "\n";
    } else {
        std::cout << "longest: " << res.longest
                  << (res.survived_to_limit ? " (unbounded at this length limit)" : "") << "\n";
    }
    return kExitPass;
}

int run_gen_sk(int k, const std::string& expect_file) {
    PatternSet set = generate_Sk(k);
    std::cout << set.str();
    if (!expect_file.empty()) {
        std::ifstream in(expect_file);
        if (!in) {
            std::cerr << "cannot open expected-list file: " << expect_file << "\n";
            return kExitUsage;
        }
        std::vector<std::string> expected;
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line[0] != '#') expected.push_back(line);
        }
        std::vector<std::string> got;
        for (const auto& p : set.patterns) got.push_back(p.str());
        std::sort(expected.begin(), expected.end());
        std::sort(got.begin(), got.end());
        if (expected != got) {
            std::cerr << "mismatch with expected list (" << got.size() << " generated, "
                      << expected.size() << " expected)\n";
            return kExitFail;
        }
        std::cerr << "matches expected list\n";
    }
    return kExitPass;
}

int run_cut_number(const std::string& word_text, int max_k) {
    Word w = Word::parse(word_text);
    if (!is_tangram(w)) {
        std::cout << "not a tangram\n";
        return kExitPass;
    }
    auto found = cut_number_oracle(w, max_k);
    if (!found) {
        std::cout << "no certificate with at most " << max_k << " cuts\n";
        return kExitPass;
    }
    std::cout << found->first << "  " << found->second.str(w) << "\n";
    return kExitPass;
}

int run_verify_morphism(const std::string& file, const std::string& alpha_text,
                        const std::string& beta_text, std::size_t min_period,
                        std::uint64_t budget, int threads, bool no_digest) {
    UniformMorphism m = load_morphism_file(file, !no_digest);
    SyncCheckParams params(Rational::parse(alpha_text), Rational::parse(beta_text), min_period);
    SyncLemmaReport rep = check_sync_lemma(m, params, budget, threads);
    if (!rep.synchronizing) {
        const auto& c = *rep.sync_counterexample;
        std::cout << "not synchronizing: image(" << c.c << ") occurs inside image(" << c.a << ")"
                  << "image(" << c.b << ") at offset " << c.offset << "\n";
        return kExitFail;
    }
    std::cout << "synchronizing: yes\n";
    std::cout << "length bound: " << rep.length_bound.str() << " (checking |w| <= "
              << rep.max_source_length << ")\n";
    std::cout << "source words checked: " << rep.words_checked << "\n";
    if (rep.violation) {
        std::cout << "violation: source word " << rep.violation->source.str() << ", repetition at "
                  << rep.violation->repetition.offset << " period "
                  << rep.violation->repetition.period << " length "
                  << rep.violation->repetition.total_length << "\n";
        return kExitFail;
    }
    if (rep.enumeration == EnumStatus::BudgetExceeded) {
        std::cout << "inconclusive: node budget exhausted\n";
        return kExitBudget;
    }
    std::cout << "all images are (" << params.beta.str() << "+," << params.min_period
              << ")-free: yes\n";
    return kExitPass;
}

int run_bounds_table(const std::string& alpha_text, std::size_t min_period, std::int64_t cap,
                     const std::string& patterns_file, const std::string& json_path) {
    std::vector<Pattern> patterns;
    if (!patterns_file.empty()) {
        std::ifstream in(patterns_file);
        if (!in) {
            std::cerr << "cannot open patterns file: " << patterns_file << "\n";
            return kExitUsage;
        }
        std::string line;
        while (std::getline(in, line))
            if (!line.empty() && line[0] != '#') patterns.push_back(Pattern::parse(line));
    } else {
        patterns = generate_Sk(4).patterns;
    }
    Rational alpha = Rational::parse(alpha_text);
    Json rows = Json::array();
    for (const auto& p : patterns) {
        auto res = max_occurrence_length(p, alpha, min_period, cap);
        Pattern rev = reverse(p);
        std::cout << p.str() << "\t" << (rev == p ? "self-reverse" : rev.str()) << "\t"
                  << (res ? std::to_string(res->bound) : "none") << "\n";
        Json row;
        row["pattern"] = p.str();
        row["reverse"] = rev == p ? "self-reverse" : rev.str();
        if (res) {
            row["bound"] = res->bound;
            Json lens = Json::array();
            for (auto x : res->witness) lens.push_back(x);
            row["witness_lengths"] = lens;
        } else {
            row["bound"] = nullptr;
        }
        rows.push_back(row);
    }
    if (!json_path.empty()) {
        Json doc;
        doc["alpha"] = alpha.str();
        doc["min_period"] = min_period;
        doc["cap"] = cap;
        doc["rows"] = rows;
        if (json_path == "-") std::cout << doc.dump(2) << "\n";
        else std::ofstream(json_path) << doc.dump(2) << "\n";
    }
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification toolkit for tangram avoidance in infinite words"};
    app.require_subcommand(1);

    // check-free
    auto* check = app.add_subcommand("check-free", "check (alpha+, n)-freeness of words on stdin");
    std::string cf_alpha = "2";
    std::size_t cf_period = 1;
    check->add_option("--alpha", cf_alpha, "exponent threshold P/Q");
    check->add_option("--min-period", cf_period, "minimum period n");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "backtracking enumeration of free words");
    int en_q = 3;
    std::string en_alpha = "2";
    std::size_t en_period = 1, en_len = 10;
    std::string en_mode = "count";
    std::uint64_t en_budget = 1'000'000'000ULL;
    enumerate->add_option("--q", en_q, "alphabet size")->required();
    enumerate->add_option("--alpha", en_alpha, "exponent threshold P/Q")->required();
    enumerate->add_option("--min-period", en_period, "minimum period n");
    enumerate->add_option("--len", en_len, "word length")->required();
    enumerate->add_option("--mode", en_mode, "count|longest")
        ->check(CLI::IsMember({"count", "longest"}));
    enumerate->add_option("--budget", en_budget, "node budget");

    // gen-sk
    auto* gensk = app.add_subcommand("gen-sk", "generate the minimal pattern set S_k");
    int sk_k = 4;
    std::string sk_expect;
    gensk->add_option("--k", sk_k, "cut number bound")->required();
    gensk->add_option("--expect-file", sk_expect, "file with expected patterns, one per line");

    // cut-number
    auto* cut = app.add_subcommand("cut-number", "cut number of a tangram (|w| <= 16)");
    std::string cut_word;
    int cut_max_k = 5;
    cut->add_option("word", cut_word, "the word, as digits")->required();
    cut->add_option("--max-k", cut_max_k, "largest cut count to try");

    // verify-morphism
    auto* vm = app.add_subcommand("verify-morphism", "synchronization-lemma hypothesis check");
    std::string vm_file = "data/h.morph", vm_alpha = "6/5", vm_beta = "5/4";
    std::size_t vm_period = 9;
    std::uint64_t vm_budget = 1'000'000'000ULL;
    int vm_threads = 0;
    bool vm_no_digest = false;
    vm->add_option("--file", vm_file, "morphism file");
    vm->add_option("--alpha", vm_alpha, "source freeness P/Q");
    vm->add_option("--beta", vm_beta, "target freeness P/Q");
    vm->add_option("--min-period", vm_period, "target minimum period");
    vm->add_option("--budget", vm_budget, "node budget");
    vm->add_option("--threads", vm_threads, "worker threads (0 = auto)");
    vm->add_flag("--no-digest", vm_no_digest, "skip the content digest check");

    // bounds-table
    auto* bt = app.add_subcommand("bounds-table", "occurrence-length bounds for doubled patterns");
    std::string bt_alpha = "5/4", bt_patterns, bt_json;
    std::size_t bt_period = 9;
    std::int64_t bt_cap = 100;
    bt->add_option("--alpha", bt_alpha, "freeness exponent P/Q");
    bt->add_option("--min-period", bt_period, "freeness minimum period");
    bt->add_option("--cap", bt_cap, "per-variable length cap (exclusive)");
    bt->add_option("--patterns", bt_patterns, "pattern list file (default: generated S_4)");
    bt->add_option("--json", bt_json, "write machine-readable output to file ('-' = stdout)");

    // pipeline commands
    std::string cfg_file, report_json;
    int cfg_threads = 0;
    std::uint64_t cfg_budget = 0;
    std::string cfg_morphism;
    bool cfg_no_digest = false;

    auto add_pipeline_options = [&](CLI::App* cmd) {
        cmd->add_option("--config", cfg_file, "key=value config file");
        cmd->add_option("--threads", cfg_threads, "worker threads (0 = auto)");
        cmd->add_option("--budget", cfg_budget, "node budget override");
        cmd->add_option("--morphism", cfg_morphism, "morphism file override");
        cmd->add_option("--report", report_json, "write JSON report to file ('-' = stdout)");
        cmd->add_flag("--no-digest", cfg_no_digest, "skip the content digest check");
    };
    auto* vt4 = app.add_subcommand("verify-t4", "replay the full 4-tangram avoidance check");
    add_pipeline_options(vt4);
    auto* vt3 = app.add_subcommand("verify-t3", "finite spot-check on the fixed-point prefix");
    add_pipeline_options(vt3);
    std::size_t vt3_len = 0;
    vt3->add_option("--prefix-len", vt3_len, "prefix length (default 10000)");
    auto* vaux = app.add_subcommand("verify-aux", "auxiliary backtracking exhaustions");
    add_pipeline_options(vaux);
    auto* v5t = app.add_subcommand("check-5tangram", "verify the 12-letter 5-tangram example");
    add_pipeline_options(v5t);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (check->parsed()) return run_check_free(cf_alpha, cf_period);
        if (enumerate->parsed())
            return run_enumerate(en_q, en_alpha, en_period, en_len, en_mode, en_budget);
        if (gensk->parsed()) return run_gen_sk(sk_k, sk_expect);
        if (cut->parsed()) return run_cut_number(cut_word, cut_max_k);
        if (vm->parsed())
            return run_verify_morphism(vm_file, vm_alpha, vm_beta, vm_period, vm_budget,
                                       vm_threads, vm_no_digest);
        if (bt->parsed())
            return run_bounds_table(bt_alpha, bt_period, bt_cap, bt_patterns, bt_json);

        PipelineConfig config;
        if (!cfg_file.empty()) config = PipelineConfig::load(cfg_file);
        if (cfg_threads > 0) config.threads = cfg_threads;
        if (cfg_budget > 0) config.node_budget = cfg_budget;
        if (!cfg_morphism.empty()) config.morphism_file = cfg_morphism;
        if (cfg_no_digest) config.enforce_digest = false;

        VerificationReport report;
        if (vt4->parsed()) {
            report = verify_t4(config);
        } else if (vt3->parsed()) {
            if (vt3_len > 0) config.t3_prefix_length = vt3_len;
            report = verify_t3_via_b4(config);
        } else if (vaux->parsed()) {
            report = verify_auxiliary_claims(config);
        } else if (v5t->parsed()) {
            report = check_5tangram_example(config);
        } else {
            std::cerr << "unknown subcommand\n";
            return kExitUsage;
        }
        write_report(report, report_json);
        return report.exit_code();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}
