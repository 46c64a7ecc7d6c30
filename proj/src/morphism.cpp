#include "tangram/morphism.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace tangram {

UniformMorphism::UniformMorphism(Alphabet source, Alphabet target, std::vector<Word> images)
    : source_(source), target_(target), images_(std::move(images)) {
    if (images_.size() != static_cast<std::size_t>(source_.size))
        throw std::invalid_argument("UniformMorphism: need one image per source letter");
    if (images_.empty() || images_[0].empty())
        throw std::invalid_argument("UniformMorphism: images must be nonempty");
    image_length_ = images_[0].size();
    for (const auto& img : images_) {
        if (img.size() != image_length_)
            throw std::invalid_argument("UniformMorphism: images must all have the same length");
        for (Letter l : img.letters())
            if (!target_.contains(l))
                throw std::invalid_argument("UniformMorphism: image letter outside target alphabet");
    }
}

const Word& UniformMorphism::image(int letter) const {
    if (!source_.contains(letter))
        throw std::out_of_range("UniformMorphism: letter outside source alphabet");
    return images_[letter];
}

Word UniformMorphism::apply(const Word& w) const {
    std::vector<Letter> out;
    out.reserve(w.size() * image_length_);
    for (Letter l : w.letters()) {
        const Word& img = image(l);
        out.insert(out.end(), img.letters().begin(), img.letters().end());
    }
    return Word(std::move(out), target_);
}

bool UniformMorphism::injective_on_letters() const {
    for (std::size_t i = 0; i < images_.size(); i++)
        for (std::size_t j = i + 1; j < images_.size(); j++)
            if (images_[i] == images_[j]) return false;
    return true;
}

UniformMorphism b4_morphism() {
    Alphabet four(4);
    std::vector<Word> images{Word::parse("01", four), Word::parse("21", four),
                             Word::parse("03", four), Word::parse("23", four)};
    return UniformMorphism(four, four, std::move(images));
}

static std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

static std::string canonical_content(const UniformMorphism& m) {
    if (m.source_size() > 10)
        throw std::invalid_argument("morphism serialization supports at most 10 source letters");
    std::string s;
    for (int a = 0; a < m.source_size(); a++) {
        s.push_back(static_cast<char>('0' + a));
        s += " -> ";
        s += m.image(a).str();
        s.push_back('\n');
    }
    return s;
}

std::uint64_t morphism_digest(const UniformMorphism& m) { return fnv1a64(canonical_content(m)); }

std::string morphism_digest_hex(const UniformMorphism& m) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(morphism_digest(m)));
    return buf;
}

std::string morphism_file_text(const UniformMorphism& m, const std::string& header_comment) {
    std::string s;
    if (!header_comment.empty()) {
        std::istringstream lines(header_comment);
        std::string line;
        while (std::getline(lines, line)) s += "# " + line + "\n";
    }
    s += "# digest: fnv1a64:" + morphism_digest_hex(m) + "\n";
    s += canonical_content(m);
    return s;
}

UniformMorphism parse_morphism(const std::string& text, bool enforce_digest) {
    std::istringstream in(text);
    std::string line;
    std::string declared_digest;
    std::vector<std::pair<int, std::string>> entries;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            const std::string comment = line.substr(hash + 1);
            auto tag = comment.find("digest: fnv1a64:");
            if (tag != std::string::npos)
                declared_digest = comment.substr(tag + 16, 16);
            line = line.substr(0, hash);
        }
        // trim
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);

        auto arrow = line.find("->");
        if (arrow == std::string::npos)
            throw std::invalid_argument("morphism file: missing '->' in line: " + line);
        std::string lhs = line.substr(0, arrow);
        std::string rhs = line.substr(arrow + 2);
        auto strip = [](std::string& s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t");
            s = (b == std::string::npos) ? "" : s.substr(b, e - b + 1);
        };
        strip(lhs);
        strip(rhs);
        if (lhs.size() != 1 || lhs[0] < '0' || lhs[0] > '9')
            throw std::invalid_argument("morphism file: bad source letter: " + lhs);
        entries.emplace_back(lhs[0] - '0', rhs);
    }
    if (entries.empty()) throw std::invalid_argument("morphism file: no entries");

    std::sort(entries.begin(), entries.end());
    int k = static_cast<int>(entries.size());
    int max_target = 0;
    for (int i = 0; i < k; i++) {
        if (entries[i].first != i)
            throw std::invalid_argument("morphism file: source letters must be 0..k-1, once each");
        for (char c : entries[i].second) {
            if (c < '0' || c > '9')
                throw std::invalid_argument("morphism file: bad image character");
            max_target = std::max(max_target, c - '0');
        }
    }
    Alphabet target(max_target + 1);
    std::vector<Word> images;
    images.reserve(k);
    for (auto& [letter, img] : entries) images.push_back(Word::parse(img, target));
    UniformMorphism m(Alphabet(k), target, std::move(images));

    if (!declared_digest.empty() && enforce_digest) {
        if (morphism_digest_hex(m) != declared_digest)
            throw std::runtime_error("morphism file: digest mismatch (expected " + declared_digest +
                                     ", content gives " + morphism_digest_hex(m) + ")");
    }
    return m;
}

UniformMorphism load_morphism_file(const std::string& path, bool enforce_digest) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open morphism file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_morphism(buf.str(), enforce_digest);
}

Word fixed_point_prefix(const UniformMorphism& m, Letter seed, std::size_t L) {
    if (!m.source_alphabet().contains(seed))
        throw std::invalid_argument("fixed_point_prefix: seed outside source alphabet");
    if (m.image(seed)[0] != seed)
        throw std::invalid_argument("fixed_point_prefix: seed is not self-extending");
    if (m.target_size() > m.source_size())
        throw std::invalid_argument("fixed_point_prefix: target alphabet exceeds source");
    if (L == 0) return Word(m.target_alphabet());
    if (m.image_length() < 2)
        throw std::invalid_argument("fixed_point_prefix: need image length >= 2");

    std::vector<Letter> buf(m.image(seed).letters());
    std::size_t idx = 1;
    while (buf.size() < L) {
        const Word& img = m.image(buf[idx++]);
        buf.insert(buf.end(), img.letters().begin(), img.letters().end());
    }
    buf.resize(L);
    return Word(std::move(buf), m.target_alphabet());
}

std::optional<SyncCounterexample> is_synchronizing(const UniformMorphism& m) {
    const std::size_t q = m.image_length();
    for (int a = 0; a < m.source_size(); a++) {
        for (int b = 0; b < m.source_size(); b++) {
            const Word& fa = m.image(a);
            const Word& fb = m.image(b);
            for (int c = 0; c < m.source_size(); c++) {
                const Word& fc = m.image(c);
                for (std::size_t off = 0; off <= q; off++) {
                    bool match = true;
                    for (std::size_t i = 0; i < q; i++) {
                        std::size_t pos = off + i;
                        Letter l = pos < q ? fa[pos] : fb[pos - q];
                        if (l != fc[i]) { match = false; break; }
                    }
                    if (!match) continue;
                    if (off == 0 && a == c) continue;
                    if (off == q && b == c) continue;
                    return SyncCounterexample{a, b, c, off};
                }
            }
        }
    }
    return std::nullopt;
}

SyncCheckParams::SyncCheckParams(Rational a, Rational b, std::size_t n)
    : alpha(a), beta(b), min_period(n) {
    if (!(Rational(1) < alpha && alpha < beta && beta < Rational(2)))
        throw std::invalid_argument("SyncCheckParams: need 1 < alpha < beta < 2");
    if (n < 1) throw std::invalid_argument("SyncCheckParams: min_period must be >= 1");
}

Rational sync_lemma_length_bound(const SyncCheckParams& p, std::size_t q) {
    Rational first = Rational(2) * p.beta / (p.beta - p.alpha);
    Rational second = Rational(2 * (static_cast<std::int64_t>(q) - 1)) *
                      (Rational(2) * p.beta - Rational(1)) /
                      (Rational(static_cast<std::int64_t>(q)) * (p.beta - Rational(1)));
    return first > second ? first : second;
}

std::size_t sync_lemma_max_source_length(const SyncCheckParams& p, std::size_t q) {
    return static_cast<std::size_t>(sync_lemma_length_bound(p, q).ceil() - 1);
}

ImageFreenessMonitor::ImageFreenessMonitor(const UniformMorphism& m, Rational beta,
                                           std::size_t min_period)
    : morphism_(&m), beta_(beta), min_period_(min_period) {
    if (!(beta > Rational(1)))
        throw std::invalid_argument("ImageFreenessMonitor: beta must be > 1");
    if (min_period_ < 1)
        throw std::invalid_argument("ImageFreenessMonitor: min_period must be >= 1");
    q_ = m.image_length();
    target_size_ = m.target_size();
    beta_num_minus_den_ = static_cast<std::uint64_t>(beta.num() - beta.den());
    beta_den_ = static_cast<std::uint64_t>(beta.den());
    // largest p with m*(p) <= 7, i.e. (num-den)*p <= 6*den
    dense_period_max_ = static_cast<std::size_t>(6 * beta_den_ / beta_num_minus_den_);
    if (fast_eligible()) table_.resize(1 << 16);
    image_.reserve(64 * q_);
    grams_.reserve(64 * q_);
}

void ImageFreenessMonitor::reset() {
    if (!table_.empty())
        for (std::size_t t = image_.size(); t-- > 7;) table_[grams_[t]].pop_back();
    image_.clear();
    grams_.clear();
    violation_.reset();
}

// Smallest violating trailing run for period p (strict exponent > beta).
static inline std::size_t run_need(std::size_t p, std::uint64_t num_minus_den,
                                   std::uint64_t den) {
    return static_cast<std::size_t>(num_minus_den * p / den + 1);
}

bool ImageFreenessMonitor::check_position(std::size_t t) {
    const Letter* img = image_.data();
    // Short periods: a violation with trailing run <= 7 must still fit its
    // maximal extension back into the first block, which pins t.
    if (t <= q_ + dense_period_max_ + 5) {
        std::size_t pmax = std::min(dense_period_max_, t);
        for (std::size_t p = min_period_; p <= pmax; p++) {
            std::size_t need = run_need(p, beta_num_minus_den_, beta_den_);
            std::size_t span = t + 2 > p + q_ ? t + 2 - p - q_ : 1;
            if (span > need) need = span;
            if (need > 7) continue; // 8-gram table covers these
            if (p + need > t + 1) continue;
            bool all = true;
            for (std::size_t j = 0; j < need; j++)
                if (img[t - j] != img[t - j - p]) { all = false; break; }
            if (all) {
                violation_ = Repetition{t - p - need + 1, p, p + need};
                return false;
            }
        }
    }
    if (fast_eligible()) {
        if (t >= 7) {
            const auto& bucket = table_[grams_[t]];
            for (std::int32_t pos : bucket) {
                std::size_t p = t - static_cast<std::size_t>(pos);
                if (p < min_period_) continue;
                std::size_t need = run_need(p, beta_num_minus_den_, beta_den_);
                std::size_t span = t + 2 > p + q_ ? t + 2 - p - q_ : 1;
                if (span > need) need = span;
                if (need < 8) need = 8;
                if (p + need > t + 1) continue;
                std::size_t j = 8;
                while (j < need && img[t - j] == img[t - j - p]) j++;
                if (j >= need) {
                    violation_ = Repetition{t - p - need + 1, p, p + need};
                    return false;
                }
            }
        }
    } else {
        // Reference path for target alphabets too large for packed 8-grams:
        // scan every period directly with the same spanning-aware threshold.
        for (std::size_t p = min_period_; p <= t; p++) {
            std::size_t need = run_need(p, beta_num_minus_den_, beta_den_);
            std::size_t span = t + 2 > p + q_ ? t + 2 - p - q_ : 1;
            if (span > need) need = span;
            if (p + need > t + 1) continue;
            bool all = true;
            for (std::size_t j = 0; j < need; j++)
                if (img[t - j] != img[t - j - p]) { all = false; break; }
            if (all) {
                violation_ = Repetition{t - p - need + 1, p, p + need};
                return false;
            }
        }
    }
    return true;
}

bool ImageFreenessMonitor::push_letter(Letter source_letter) {
    const Word& img = morphism_->image(source_letter);
    const bool fast = fast_eligible();
    for (Letter l : img.letters()) {
        std::size_t t = image_.size();
        image_.push_back(l);
        if (fast) {
            std::uint16_t g = static_cast<std::uint16_t>(
                ((grams_.empty() ? 0u : grams_.back()) << 2 | l) & 0xFFFFu);
            grams_.push_back(g);
            // registered before the check so that aborted pushes still
            // leave bucket state reset() can unwind; the self-entry is
            // skipped during probing (p = 0 < min_period)
            if (t >= 7) table_[g].push_back(static_cast<std::int32_t>(t));
        }
        if (!check_position(t)) return false;
    }
    return true;
}

void ImageFreenessMonitor::pop_letter() {
    if (image_.size() < q_) throw std::logic_error("ImageFreenessMonitor: nothing to pop");
    for (std::size_t i = 0; i < q_; i++) {
        std::size_t t = image_.size() - 1;
        if (fast_eligible()) {
            if (t >= 7) {
                auto& bucket = table_[grams_[t]];
                // positions enter in increasing order, so LIFO removal works
                bucket.pop_back();
            }
            grams_.pop_back();
        }
        image_.pop_back();
    }
}

namespace {

struct LemmaTaskResult {
    std::uint64_t words = 0;
    EnumStatus status = EnumStatus::Completed;
    std::optional<SyncLemmaViolation> violation;
};

LemmaTaskResult run_lemma_span(const UniformMorphism& m, const SyncCheckParams& p,
                               ImageFreenessMonitor& monitor, const std::vector<Letter>& prefix,
                               std::size_t max_len, std::uint64_t budget) {
    LemmaTaskResult res;
    monitor.reset();
    FreenessParams source_params(p.alpha, 1);
    std::vector<Letter> current;
    EnumVisitor visitor;
    visitor.on_push = [&](const Letter* w, std::size_t len) {
        current.assign(w, w + len);
        return monitor.push_letter(w[len - 1]);
    };
    visitor.on_pop = [&] { monitor.pop_letter(); };
    EnumLimits limits;
    limits.node_budget = budget;
    EnumResult er = enumerate_free(m.source_size(), source_params, max_len, limits, &visitor,
                                   prefix);
    res.words = er.words_visited;
    res.status = er.status;
    if (er.status == EnumStatus::Aborted) {
        SyncLemmaViolation v;
        v.source = Word(current, m.source_alphabet());
        v.repetition = *monitor.violation();
        res.violation = std::move(v);
    }
    return res;
}

} // namespace

SyncLemmaReport check_sync_lemma(const UniformMorphism& m, const SyncCheckParams& p,
                                 std::uint64_t node_budget, int threads) {
    SyncLemmaReport report;
    report.length_bound = sync_lemma_length_bound(p, m.image_length());
    report.max_source_length = sync_lemma_max_source_length(p, m.image_length());

    auto counterexample = is_synchronizing(m);
    report.synchronizing = !counterexample.has_value();
    report.sync_counterexample = counterexample;
    if (!report.synchronizing) return report;

    const std::size_t L = report.max_source_length;
    const std::size_t split_depth = std::min<std::size_t>(L, 2);
    FreenessParams source_params(p.alpha, 1);

    // Base sweep covers all words up to the split depth and collects the
    // subtree roots for the workers.
    std::vector<std::vector<Letter>> roots;
    {
        ImageFreenessMonitor monitor(m, p.beta, p.min_period);
        std::vector<Letter> current;
        EnumVisitor visitor;
        visitor.on_push = [&](const Letter* w, std::size_t len) {
            current.assign(w, w + len);
            if (!monitor.push_letter(w[len - 1])) return false;
            if (len == split_depth) roots.push_back(current);
            return true;
        };
        visitor.on_pop = [&] { monitor.pop_letter(); };
        EnumLimits limits;
        limits.node_budget = node_budget;
        EnumResult base = enumerate_free(m.source_size(), source_params, split_depth, limits,
                                         &visitor);
        report.words_checked = base.words_visited;
        if (base.status == EnumStatus::Aborted) {
            report.violation = SyncLemmaViolation{Word(current, m.source_alphabet()),
                                                  *monitor.violation()};
            report.enumeration = EnumStatus::Completed;
            report.passed = false;
            return report;
        }
        if (base.status == EnumStatus::BudgetExceeded) {
            report.enumeration = EnumStatus::BudgetExceeded;
            report.passed = false;
            return report;
        }
    }
    if (L == split_depth) {
        report.passed = true;
        return report;
    }

    const int nthreads = std::max(1, threads);
    std::atomic<std::size_t> next_task{0};
    std::atomic<std::size_t> first_failed{roots.size()};
    std::atomic<std::uint64_t> words_used{report.words_checked};
    std::atomic<bool> budget_hit{false};
    std::mutex mtx;
    std::vector<std::pair<std::size_t, SyncLemmaViolation>> violations;

    auto worker = [&] {
        ImageFreenessMonitor monitor(m, p.beta, p.min_period);
        for (;;) {
            std::size_t task = next_task.fetch_add(1);
            if (task >= roots.size()) return;
            if (task > first_failed.load()) continue;
            std::uint64_t used = words_used.load();
            std::uint64_t remaining = used < node_budget ? node_budget - used : 0;
            if (remaining == 0) { budget_hit.store(true); return; }
            LemmaTaskResult res = run_lemma_span(m, p, monitor, roots[task], L, remaining);
            words_used.fetch_add(res.words);
            if (res.status == EnumStatus::BudgetExceeded) budget_hit.store(true);
            if (res.violation) {
                std::lock_guard<std::mutex> lock(mtx);
                std::size_t cur = first_failed.load();
                while (task < cur && !first_failed.compare_exchange_weak(cur, task)) {}
                violations.emplace_back(task, std::move(*res.violation));
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; i++) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    report.words_checked = words_used.load();
    if (!violations.empty()) {
        auto best = std::min_element(violations.begin(), violations.end(),
                                     [](const auto& a, const auto& b) { return a.first < b.first; });
        report.violation = best->second;
        report.passed = false;
        return report;
    }
    if (budget_hit.load()) {
        report.enumeration = EnumStatus::BudgetExceeded;
        report.passed = false;
        return report;
    }
    report.passed = true;
    return report;
}

} // namespace tangram
