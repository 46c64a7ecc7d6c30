#include "tangram/pattern.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstring>
#include <functional>
#include <limits>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace tangram {

Pattern::Pattern(std::vector<std::uint8_t> vars) : vars_(std::move(vars)) {
    int maxv = -1;
    for (auto v : vars_) maxv = std::max(maxv, static_cast<int>(v));
    nvars_ = maxv + 1;
}

Pattern Pattern::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("Pattern: empty");
    std::vector<std::uint8_t> vars;
    vars.reserve(text.size());
    for (char c : text) {
        if (c < 'A' || c > 'Z')
            throw std::invalid_argument("Pattern: invalid character '" + std::string(1, c) + "'");
        vars.push_back(static_cast<std::uint8_t>(c - 'A'));
    }
    int seen = 0;
    for (auto v : vars) {
        if (v > seen)
            throw std::invalid_argument("Pattern: '" + text + "' is not canonical");
        if (v == seen) seen++;
    }
    return Pattern(std::move(vars));
}

Pattern Pattern::canonicalize(const std::vector<std::uint8_t>& vars) {
    if (vars.empty()) throw std::invalid_argument("Pattern: empty");
    std::array<int, 256> relabel;
    relabel.fill(-1);
    int next = 0;
    std::vector<std::uint8_t> out;
    out.reserve(vars.size());
    for (auto v : vars) {
        if (relabel[v] < 0) relabel[v] = next++;
        out.push_back(static_cast<std::uint8_t>(relabel[v]));
    }
    return Pattern(std::move(out));
}

Word Pattern::as_word() const {
    return Word(vars_, Alphabet(nvars_));
}

bool Pattern::doubled_exactly_twice() const {
    std::vector<int> counts(nvars_, 0);
    for (auto v : vars_) counts[v]++;
    return std::all_of(counts.begin(), counts.end(), [](int c) { return c == 2; });
}

std::string Pattern::str() const {
    std::string s;
    s.reserve(vars_.size());
    for (auto v : vars_) s.push_back(static_cast<char>('A' + v));
    return s;
}

bool Pattern::operator<(const Pattern& o) const {
    if (nvars_ != o.nvars_) return nvars_ < o.nvars_;
    return vars_ < o.vars_;
}

Pattern reverse(const Pattern& p) {
    std::vector<std::uint8_t> rev(p.vars().rbegin(), p.vars().rend());
    return Pattern::canonicalize(rev);
}

Word VariableAssignment::apply(const Pattern& p) const {
    Word out = images.empty() ? Word() : Word(images[0].alphabet());
    for (std::size_t i = 0; i < p.length(); i++)
        for (Letter l : images[p[i]].letters()) out.push_back(l);
    return out;
}

std::string VariableAssignment::str() const {
    std::string s;
    for (std::size_t v = 0; v < images.size(); v++) {
        if (v) s.push_back(' ');
        s.push_back(static_cast<char>('A' + v));
        s.push_back('=');
        s += images[v].str();
    }
    return s;
}

namespace {

// For long words, jump tables "next position >= i holding letter l" let the
// searcher skip image-length candidates whose following slot would fail on
// its first letter.
struct JumpIndex {
    std::size_t n = 0;
    int sigma = 0;
    std::vector<std::int32_t> next; // sigma rows of n+1 entries

    static JumpIndex build(const Letter* w, std::size_t n, int sigma) {
        JumpIndex idx;
        idx.n = n;
        idx.sigma = sigma;
        idx.next.assign(static_cast<std::size_t>(sigma) * (n + 1),
                        static_cast<std::int32_t>(n));
        for (int l = 0; l < sigma; l++) {
            auto* row = idx.next.data() + static_cast<std::size_t>(l) * (n + 1);
            for (std::size_t i = n; i-- > 0;)
                row[i] = w[i] == l ? static_cast<std::int32_t>(i) : row[i + 1];
        }
        return idx;
    }

    std::size_t next_at(Letter l, std::size_t i) const {
        return static_cast<std::size_t>(next[static_cast<std::size_t>(l) * (n + 1) + i]);
    }
};

constexpr std::size_t kJumpIndexThreshold = 96;

// Backtracking occurrence search anchored at a fixed offset. Walks the
// pattern slot by slot; the first slot of each variable chooses an image
// length, later slots verify the corresponding segment of w, so mismatches
// die as early as possible.
struct Searcher {
    const Letter* w = nullptr;
    std::size_t n = 0;
    const std::uint8_t* pat = nullptr;
    std::size_t plen = 0;
    int nvars = 0;
    std::size_t anchor = 0;
    std::size_t limit = 0; // anchor + cap, clamped to n
    bool exact = false;    // occurrence must end exactly at limit
    const JumpIndex* jumps = nullptr;

    std::size_t var_start[26] = {};
    std::size_t var_len[26] = {};
    bool assigned[26] = {};

    // on_found(end_pos) returns true to stop the search.
    template <class OnFound>
    bool dfs(std::size_t slot, std::size_t pos, const OnFound& on_found) {
        if (slot == plen) {
            if (exact && pos != limit) return false;
            return on_found(pos);
        }
        int v = pat[slot];
        if (assigned[v]) {
            std::size_t len = var_len[v];
            if (pos + len > limit) return false;
            if (std::memcmp(w + pos, w + var_start[v], len) != 0) return false;
            return dfs(slot + 1, pos + len, on_found);
        }
        // Feasibility: remaining slots of v cost len(v) each once chosen,
        // other unassigned slots at least 1, assigned ones their image.
        std::size_t min_others = 0;
        std::size_t v_slots = 0;
        bool all_assigned_after = true;
        for (std::size_t s = slot; s < plen; s++) {
            int u = pat[s];
            if (u == v) v_slots++;
            else if (assigned[u]) min_others += var_len[u];
            else { min_others += 1; all_assigned_after = false; }
        }
        if (pos + min_others + v_slots > limit) return false;

        std::size_t max_len = (limit - pos - min_others) / v_slots;
        assigned[v] = true;
        var_start[v] = pos;
        // When the following slot is an already-assigned variable, only
        // lengths placing its image correctly can succeed; verify it inline
        // and step straight past it.
        if (jumps && slot + 1 < plen && assigned[pat[slot + 1]] && pat[slot + 1] != v) {
            const int v2 = pat[slot + 1];
            const Letter* image2 = w + var_start[v2];
            const std::size_t len2 = var_len[v2];
            const Letter follow = image2[0];
            for (std::size_t end = pos + 1; end <= pos + max_len;) {
                std::size_t hit = jumps->next_at(follow, end);
                if (hit > pos + max_len) break;
                std::size_t j = 1;
                while (j < len2 && hit + j < n && w[hit + j] == image2[j]) j++;
                if (j == len2 && hit + len2 <= limit) {
                    var_len[v] = hit - pos;
                    if (dfs(slot + 2, hit + len2, on_found)) { assigned[v] = false; return true; }
                }
                end = hit + 1;
            }
        } else if (exact && all_assigned_after) {
            // every remaining unassigned slot is v, so its length is forced
            std::size_t need = limit - pos - min_others;
            if (need % v_slots == 0 && need / v_slots >= 1) {
                var_len[v] = need / v_slots;
                if (dfs(slot + 1, pos + var_len[v], on_found)) { assigned[v] = false; return true; }
            }
        } else {
            for (std::size_t len = 1; len <= max_len; len++) {
                var_len[v] = len;
                if (dfs(slot + 1, pos + len, on_found)) { assigned[v] = false; return true; }
            }
        }
        assigned[v] = false;
        return false;
    }

    VariableAssignment materialize(Alphabet a) const {
        VariableAssignment m;
        m.images.reserve(nvars);
        for (int v = 0; v < nvars; v++)
            m.images.push_back(
                Word(std::vector<Letter>(w + var_start[v], w + var_start[v] + var_len[v]), a));
        return m;
    }
};

Searcher make_searcher(const Pattern& p, const Letter* w, std::size_t n, std::size_t anchor,
                       std::optional<std::size_t> cap, bool exact,
                       const JumpIndex* jumps = nullptr) {
    Searcher s;
    s.w = w;
    s.n = n;
    s.pat = p.vars().data();
    s.plen = p.length();
    s.nvars = p.variable_count();
    s.anchor = anchor;
    std::size_t cap_len = cap.value_or(n);
    s.limit = std::min(n, anchor + cap_len);
    s.exact = exact;
    s.jumps = jumps;
    return s;
}

} // namespace

namespace {

std::optional<JumpIndex> maybe_jump_index(const Word& w) {
    if (w.size() < kJumpIndexThreshold) return std::nullopt;
    return JumpIndex::build(w.data(), w.size(), w.alphabet().size);
}

std::optional<Occurrence> find_at_impl(const Pattern& p, const Word& w, std::size_t offset,
                                       std::optional<std::size_t> cap, const JumpIndex* jumps) {
    if (offset >= w.size()) return std::nullopt;
    Searcher s = make_searcher(p, w.data(), w.size(), offset, cap, false, jumps);
    if (s.dfs(0, offset, [](std::size_t) { return true; }))
        return Occurrence{offset, s.materialize(w.alphabet())};
    return std::nullopt;
}

} // namespace

std::optional<Occurrence> find_occurrence_at(const Pattern& p, const Word& w, std::size_t offset,
                                             std::optional<std::size_t> max_image_total) {
    auto jumps = maybe_jump_index(w);
    return find_at_impl(p, w, offset, max_image_total, jumps ? &*jumps : nullptr);
}

std::optional<Occurrence> find_occurrence(const Pattern& p, const Word& w,
                                          std::optional<std::size_t> max_image_total) {
    auto jumps = maybe_jump_index(w);
    for (std::size_t offset = 0; offset + p.length() <= w.size(); offset++)
        if (auto occ = find_at_impl(p, w, offset, max_image_total, jumps ? &*jumps : nullptr))
            return occ;
    return std::nullopt;
}

std::optional<Occurrence> find_occurrence_parallel(const Pattern& p, const Word& w,
                                                   std::optional<std::size_t> max_image_total,
                                                   int threads) {
    if (threads < 2 || w.size() < 256) return find_occurrence(p, w, max_image_total);

    auto jumps = maybe_jump_index(w);
    std::atomic<std::size_t> next_anchor{0};
    std::atomic<std::size_t> best_anchor{std::numeric_limits<std::size_t>::max()};
    std::mutex mtx;
    std::optional<Occurrence> best;
    std::size_t last = w.size() >= p.length() ? w.size() - p.length() + 1 : 0;

    auto worker = [&] {
        for (;;) {
            std::size_t a = next_anchor.fetch_add(1);
            if (a >= last || a > best_anchor.load()) return;
            if (auto occ = find_at_impl(p, w, a, max_image_total, jumps ? &*jumps : nullptr)) {
                std::lock_guard<std::mutex> lock(mtx);
                if (a < best_anchor.load()) {
                    best_anchor.store(a);
                    best = std::move(occ);
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; i++) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return best;
}

std::vector<std::pair<std::size_t, std::size_t>> occurrence_spans(
    const Pattern& p, const Word& w, std::optional<std::size_t> max_image_total) {
    auto jumps = maybe_jump_index(w);
    std::set<std::pair<std::size_t, std::size_t>> spans;
    for (std::size_t offset = 0; offset + p.length() <= w.size(); offset++) {
        Searcher s = make_searcher(p, w.data(), w.size(), offset, max_image_total, false,
                                   jumps ? &*jumps : nullptr);
        s.dfs(0, offset, [&](std::size_t end) {
            spans.emplace(offset, end - offset);
            return false; // keep enumerating
        });
    }
    return {spans.begin(), spans.end()};
}

std::optional<VariableAssignment> exact_pattern_match(const Pattern& p, const Letter* w,
                                                      std::size_t len) {
    if (len < p.length()) return std::nullopt;
    Searcher s = make_searcher(p, w, len, 0, std::nullopt, true);
    if (s.dfs(0, 0, [](std::size_t) { return true; })) {
        int maxl = 0;
        for (std::size_t i = 0; i < len; i++) maxl = std::max(maxl, static_cast<int>(w[i]));
        return s.materialize(Alphabet(maxl + 1));
    }
    return std::nullopt;
}

std::optional<VariableAssignment> exact_pattern_match(const Pattern& p, const Word& w) {
    if (w.size() < p.length()) return std::nullopt;
    Searcher s = make_searcher(p, w.data(), w.size(), 0, std::nullopt, true);
    if (s.dfs(0, 0, [](std::size_t) { return true; }))
        return s.materialize(w.alphabet());
    return std::nullopt;
}

bool pattern_contains(const Pattern& p, const Pattern& q) {
    return find_occurrence(q, p.as_word()).has_value();
}

Formula Formula::parse(const std::string& text) {
    Formula f;
    std::array<int, 26> relabel;
    relabel.fill(-1);
    int next = 0;
    std::vector<std::uint8_t> current;
    auto flush = [&] {
        if (current.empty()) throw std::invalid_argument("Formula: empty fragment");
        f.fragments_.push_back(current);
        current.clear();
    };
    for (char c : text) {
        if (c == '.') { flush(); continue; }
        if (c < 'A' || c > 'Z')
            throw std::invalid_argument("Formula: invalid character '" + std::string(1, c) + "'");
        int v = c - 'A';
        if (relabel[v] < 0) relabel[v] = next++;
        current.push_back(static_cast<std::uint8_t>(relabel[v]));
    }
    flush();
    f.nvars_ = next;

    std::vector<int> counts(next, 0);
    for (const auto& frag : f.fragments_)
        for (auto v : frag) counts[v]++;
    for (int v = 0; v < next; v++)
        if (counts[v] < 2)
            throw std::invalid_argument("Formula: variable " + std::string(1, char('A' + v)) +
                                        " is isolated");
    return f;
}

std::string Formula::str() const {
    std::string s;
    for (std::size_t i = 0; i < fragments_.size(); i++) {
        if (i) s.push_back('.');
        for (auto v : fragments_[i]) s.push_back(static_cast<char>('A' + v));
    }
    return s;
}

std::optional<VariableAssignment> find_formula_occurrence(const Formula& f, const Word& w,
                                                          std::size_t max_image_len) {
    if (max_image_len < 1)
        throw std::invalid_argument("find_formula_occurrence: max_image_len must be >= 1");
    if (w.empty()) return std::nullopt;

    std::size_t max_frag_slots = 0;
    for (const auto& frag : f.fragments()) max_frag_slots = std::max(max_frag_slots, frag.size());
    std::size_t member_max = max_frag_slots * max_image_len;

    // Every factor of w up to the longest possible fragment image.
    std::unordered_set<std::string> factor_set;
    const auto& raw = w.letters();
    for (std::size_t i = 0; i < raw.size(); i++) {
        std::string s;
        for (std::size_t len = 1; len <= member_max && i + len <= raw.size(); len++) {
            s.push_back(static_cast<char>(raw[i + len - 1]));
            factor_set.insert(s);
        }
    }
    // Candidate images: distinct factors up to max_image_len, in a fixed order.
    std::vector<std::string> candidates;
    for (const auto& s : factor_set)
        if (s.size() <= max_image_len) candidates.push_back(s);
    std::sort(candidates.begin(), candidates.end(), [](const std::string& a, const std::string& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });

    int nv = f.variable_count();
    // Fragments become checkable once their highest variable is assigned.
    std::vector<std::vector<const std::vector<std::uint8_t>*>> ready(nv);
    for (const auto& frag : f.fragments()) {
        std::uint8_t hi = *std::max_element(frag.begin(), frag.end());
        ready[hi].push_back(&frag);
    }

    std::vector<std::string> images(nv);
    std::function<bool(int)> assign = [&](int v) -> bool {
        if (v == nv) return true;
        for (const auto& cand : candidates) {
            images[v] = cand;
            bool ok = true;
            for (const auto* frag : ready[v]) {
                std::string img;
                for (auto fv : *frag) img += images[fv];
                if (!factor_set.count(img)) { ok = false; break; }
            }
            if (ok && assign(v + 1)) return true;
        }
        return false;
    };
    if (!assign(0)) return std::nullopt;

    VariableAssignment m;
    for (int v = 0; v < nv; v++) {
        std::vector<Letter> letters(images[v].begin(), images[v].end());
        m.images.push_back(Word(std::move(letters), w.alphabet()));
    }
    return m;
}

std::vector<Pattern> doubled_patterns(int j) {
    if (j < 1) throw std::invalid_argument("doubled_patterns: need j >= 1");
    std::vector<Pattern> out;
    std::vector<std::uint8_t> word;
    std::vector<int> count(j, 0);
    int opened = 0;
    std::function<void()> build = [&] {
        if (word.size() == static_cast<std::size_t>(2 * j)) {
            out.push_back(Pattern::canonicalize(word));
            return;
        }
        for (int v = 0; v <= opened && v < j; v++) {
            if (v == opened) {
                // open a fresh variable
                count[v] = 1;
                opened++;
                word.push_back(static_cast<std::uint8_t>(v));
                build();
                word.pop_back();
                opened--;
                count[v] = 0;
            } else if (count[v] == 1) {
                count[v] = 2;
                word.push_back(static_cast<std::uint8_t>(v));
                build();
                word.pop_back();
                count[v] = 1;
            }
        }
    };
    build();
    return out;
}

PatternSet generate_Sk(int k) {
    if (k < 1) throw std::invalid_argument("generate_Sk: need k >= 1");
    std::vector<std::vector<Pattern>> by_vars;
    for (int j = 1; j <= k; j++) by_vars.push_back(doubled_patterns(j));

    PatternSet out;
    for (int j = 1; j <= k; j++) {
        for (const auto& p : by_vars[j - 1]) {
            bool minimal = true;
            // Non-erasing images mean only strictly smaller candidates can
            // occur in p; same-size containment would force p itself.
            for (int i = 1; i < j && minimal; i++)
                for (const auto& q : by_vars[i - 1])
                    if (pattern_contains(p, q)) { minimal = false; break; }
            if (minimal) out.patterns.push_back(p);
        }
    }
    return out;
}

std::string PatternSet::str() const {
    std::string s;
    for (const auto& p : patterns) {
        s += p.str();
        s.push_back('\n');
    }
    return s;
}

} // namespace tangram
