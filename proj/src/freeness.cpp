#include "tangram/freeness.hpp"

#include <stdexcept>

namespace tangram {

FreenessParams::FreenessParams(Rational a, std::size_t n) : alpha(a), min_period(n) {
    if (!(alpha > Rational(1))) throw std::invalid_argument("FreenessParams: alpha must be > 1");
    if (n < 1) throw std::invalid_argument("FreenessParams: min_period must be >= 1");
}

// Smallest m with (p+m)/p > alpha (strict), or >= alpha (inclusive).
static std::size_t run_threshold(std::size_t p, const Rational& alpha, bool strict) {
    auto num = static_cast<std::uint64_t>(alpha.num());
    auto den = static_cast<std::uint64_t>(alpha.den());
    std::uint64_t lhs = (num - den) * p;
    if (strict) return static_cast<std::size_t>(lhs / den + 1);
    return static_cast<std::size_t>((lhs + den - 1) / den);
}

static bool inclusive_at_two(const Rational& alpha) { return alpha == Rational(2); }

std::size_t violation_run_threshold(std::size_t period, const FreenessParams& p) {
    return run_threshold(period, p.alpha, !inclusive_at_two(p.alpha));
}

// Scans periods ascending, positions ascending; reports the first moment a
// trailing match run reaches the violation threshold.
static std::optional<Repetition> scan_for_violation(const Letter* w, std::size_t len,
                                                    const FreenessParams& p, bool strict) {
    if (len < 2) return std::nullopt;
    for (std::size_t period = p.min_period; period < len; period++) {
        std::size_t need = run_threshold(period, p.alpha, strict);
        if (period + need > len) continue;
        std::size_t run = 0;
        for (std::size_t i = period; i < len; i++) {
            if (w[i] == w[i - period]) {
                run++;
                if (run >= need)
                    return Repetition{i - period - run + 1, period, period + run};
            } else {
                run = 0;
            }
        }
    }
    return std::nullopt;
}

std::optional<Repetition> find_violation(const Letter* w, std::size_t len,
                                         const FreenessParams& p) {
    return scan_for_violation(w, len, p, true);
}

std::optional<Repetition> find_violation(const Word& w, const FreenessParams& p) {
    return find_violation(w.data(), w.size(), p);
}

bool is_square_free(const Letter* w, std::size_t len) {
    for (std::size_t period = 1; 2 * period <= len; period++) {
        std::size_t run = 0;
        for (std::size_t i = period; i < len; i++) {
            if (w[i] == w[i - period]) {
                if (++run >= period) return false;
            } else {
                run = 0;
            }
        }
    }
    return true;
}

bool is_square_free(const Word& w) { return is_square_free(w.data(), w.size()); }

bool is_free(const Letter* w, std::size_t len, const FreenessParams& p) {
    return !scan_for_violation(w, len, p, !inclusive_at_two(p.alpha)).has_value();
}

bool is_free(const Word& w, const FreenessParams& p) { return is_free(w.data(), w.size(), p); }

bool violation_ending_at(const Letter* w, std::size_t t, const FreenessParams& p) {
    bool strict = !inclusive_at_two(p.alpha);
    for (std::size_t period = p.min_period; period <= t; period++) {
        std::size_t need = run_threshold(period, p.alpha, strict);
        if (period + need > t + 1) continue;
        bool all = true;
        for (std::size_t j = 0; j < need; j++) {
            if (w[t - j] != w[t - j - period]) { all = false; break; }
        }
        if (all) return true;
    }
    return false;
}

namespace {

struct Dfs {
    int q;
    const FreenessParams* params;
    std::size_t limit;
    std::uint64_t budget;
    const EnumVisitor* visitor;

    std::vector<Letter> word;
    EnumResult result;

    // Returns false to abort the whole search.
    bool run(std::size_t depth) {
        if (depth >= limit) return true;
        for (int a = 0; a < q; a++) {
            word.push_back(static_cast<Letter>(a));
            if (!violation_ending_at(word.data(), depth, *params)) {
                if (result.words_visited >= budget) {
                    result.status = EnumStatus::BudgetExceeded;
                    word.pop_back();
                    return false;
                }
                result.words_visited++;
                if (depth + 1 > result.longest) result.longest = depth + 1;
                if (depth + 1 == limit) result.count_at_length++;
                bool keep_going = true;
                if (visitor && visitor->on_push &&
                    !visitor->on_push(word.data(), depth + 1)) {
                    result.status = EnumStatus::Aborted;
                    keep_going = false;
                } else {
                    keep_going = run(depth + 1);
                    if (visitor && visitor->on_pop) visitor->on_pop();
                }
                if (!keep_going) { word.pop_back(); return false; }
            }
            word.pop_back();
        }
        return true;
    }
};

} // namespace

EnumResult enumerate_free(int q, const FreenessParams& p, std::size_t L, const EnumLimits& limits,
                          const EnumVisitor* visitor, const std::vector<Letter>& prefix) {
    if (q < 1) throw std::invalid_argument("enumerate_free: alphabet size must be >= 1");
    if (prefix.size() > L) throw std::invalid_argument("enumerate_free: prefix longer than L");
    for (Letter l : prefix)
        if (l >= q) throw std::invalid_argument("enumerate_free: prefix letter outside alphabet");
    if (!is_free(prefix.data(), prefix.size(), p))
        throw std::invalid_argument("enumerate_free: prefix is not free");

    Dfs dfs{q, &p, L, limits.node_budget, visitor, {}, {}};
    dfs.word.reserve(L);
    for (std::size_t i = 0; i < prefix.size(); i++) {
        dfs.word.push_back(prefix[i]);
        if (visitor && visitor->on_push && !visitor->on_push(dfs.word.data(), i + 1)) {
            dfs.result.status = EnumStatus::Aborted;
            return dfs.result;
        }
    }
    dfs.result.longest = prefix.size();
    if (L == prefix.size()) {
        dfs.result.count_at_length = 1; // the prefix itself (or epsilon)
        dfs.result.survived_to_limit = true;
        return dfs.result;
    }
    dfs.run(prefix.size());
    dfs.result.survived_to_limit = (dfs.result.longest == L);
    return dfs.result;
}

} // namespace tangram
