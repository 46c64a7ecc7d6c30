#include "tangram/cuts.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

namespace tangram {

bool CutCertificate::validate(const Word& w) const {
    const std::size_t n = w.size();
    if (n == 0 || n % 2 != 0) return false;
    for (std::size_t i = 0; i < cuts.size(); i++) {
        if (cuts[i] == 0 || cuts[i] >= n) return false;
        if (i > 0 && cuts[i] <= cuts[i - 1]) return false;
    }
    const std::size_t pieces = cuts.size() + 1;
    if (piece_copy.size() != pieces) return false;

    std::vector<std::pair<std::size_t, std::size_t>> bounds; // (start, len)
    std::size_t prev = 0;
    for (std::size_t c : cuts) {
        bounds.emplace_back(prev, c - prev);
        prev = c;
    }
    bounds.emplace_back(prev, n - prev);

    for (int side = 0; side < 2; side++) {
        std::vector<std::size_t> expected;
        for (std::size_t i = 0; i < pieces; i++)
            if (piece_copy[i] == side) expected.push_back(i);
        std::vector<std::size_t> stated = copy_order[side];
        std::sort(stated.begin(), stated.end());
        if (stated != expected || expected.empty()) return false;

        Word assembled(w.alphabet());
        for (std::size_t idx : copy_order[side]) {
            auto [start, len] = bounds[idx];
            for (std::size_t i = 0; i < len; i++) assembled.push_back(w[start + i]);
        }
        if (assembled != common) return false;
    }
    return true;
}

std::string CutCertificate::str(const Word& w) const {
    std::vector<std::pair<std::size_t, std::size_t>> bounds;
    std::size_t prev = 0;
    for (std::size_t c : cuts) {
        bounds.emplace_back(prev, c - prev);
        prev = c;
    }
    bounds.emplace_back(prev, w.size() - prev);

    std::string s;
    for (std::size_t i = 0; i < bounds.size(); i++) {
        if (i) s.push_back('|');
        s += w.factor(bounds[i].first, bounds[i].second).str();
    }
    for (int side = 0; side < 2; side++) {
        s += side == 0 ? "  copy1=" : ", copy2=";
        for (std::size_t k = 0; k < copy_order[side].size(); k++) {
            if (k) s.push_back('+');
            auto [start, len] = bounds[copy_order[side][k]];
            s += w.factor(start, len).str();
        }
    }
    return s;
}

namespace {

// First matching concatenation orders of the two piece groups, in
// lexicographic order of index permutations.
bool find_matching_orders(const Word& w,
                          const std::vector<std::pair<std::size_t, std::size_t>>& bounds,
                          const std::vector<std::size_t>& group0,
                          const std::vector<std::size_t>& group1, CutCertificate& cert) {
    auto assemble = [&](const std::vector<std::size_t>& order) {
        std::string s;
        for (std::size_t idx : order) {
            auto [start, len] = bounds[idx];
            for (std::size_t i = 0; i < len; i++) s.push_back(static_cast<char>(w[start + i]));
        }
        return s;
    };
    std::vector<std::size_t> perm0 = group0;
    do {
        std::string u0 = assemble(perm0);
        std::vector<std::size_t> perm1 = group1;
        do {
            if (assemble(perm1) == u0) {
                cert.copy_order[0] = perm0;
                cert.copy_order[1] = perm1;
                std::vector<Letter> letters(u0.begin(), u0.end());
                cert.common = Word(std::move(letters), w.alphabet());
                return true;
            }
        } while (std::next_permutation(perm1.begin(), perm1.end()));
    } while (std::next_permutation(perm0.begin(), perm0.end()));
    return false;
}

// Lexicographic k-combinations over {1, ..., last}; combo[i] tops out at
// last - (k-1-i).
bool next_combination(std::vector<std::size_t>& combo, std::size_t last) {
    const std::size_t k = combo.size();
    std::size_t i = k;
    while (i-- > 0) {
        if (combo[i] < last - (k - 1 - i)) {
            combo[i]++;
            for (std::size_t j = i + 1; j < k; j++) combo[j] = combo[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

std::optional<std::pair<int, CutCertificate>> cut_number_oracle(const Word& w, int max_k) {
    if (w.size() > 16)
        throw std::invalid_argument("cut_number_oracle: |w| <= 16 (exponential search)");
    if (w.empty() || !is_tangram(w)) return std::nullopt;
    const std::size_t n = w.size();
    const std::size_t half = n / 2;

    for (int k = 1; k <= max_k && k < static_cast<int>(n); k++) {
        std::vector<std::size_t> cuts(k);
        std::iota(cuts.begin(), cuts.end(), 1);
        do {
            std::vector<std::pair<std::size_t, std::size_t>> bounds;
            std::size_t prev = 0;
            for (std::size_t c : cuts) {
                bounds.emplace_back(prev, c - prev);
                prev = c;
            }
            bounds.emplace_back(prev, n - prev);
            const std::size_t pieces = bounds.size();

            // piece 0 stays in copy 0; copies are interchangeable
            for (std::uint32_t mask = 0; mask < (1u << pieces); mask += 2) {
                std::size_t len0 = 0;
                for (std::size_t i = 0; i < pieces; i++)
                    if (!(mask >> i & 1)) len0 += bounds[i].second;
                if (len0 != half) continue;

                std::vector<std::size_t> group0, group1;
                for (std::size_t i = 0; i < pieces; i++)
                    (mask >> i & 1 ? group1 : group0).push_back(i);
                if (group1.empty()) continue;

                CutCertificate cert;
                cert.cuts = cuts;
                cert.piece_copy.assign(pieces, 0);
                for (std::size_t i = 0; i < pieces; i++) cert.piece_copy[i] = mask >> i & 1;
                if (find_matching_orders(w, bounds, group0, group1, cert))
                    return std::make_pair(k, cert);
            }
        } while (next_combination(cuts, n - 1));
    }
    return std::nullopt;
}

TangramClassification classify_tangram(const Word& w, int max_k) {
    TangramClassification out;
    out.word = w;
    if (auto found = cut_number_oracle(w, max_k)) {
        out.cut_number = found->first;
        out.certificate = std::move(found->second);
    }
    return out;
}

namespace {

const std::vector<Pattern>& doubled_universe(int j) {
    static std::mutex mtx;
    static std::map<int, std::vector<Pattern>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(j);
    if (it == cache.end()) it = cache.emplace(j, doubled_patterns(j)).first;
    return it->second;
}

const PatternSet& cached_Sk(int k) {
    static std::mutex mtx;
    static std::map<int, PatternSet> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, generate_Sk(k)).first;
    return it->second;
}

} // namespace

bool cut_number_via_patterns(const Letter* w, std::size_t len, int k) {
    if (k < 1) throw std::invalid_argument("cut_number_via_patterns: k >= 1");
    if (len == 0 || !is_tangram(w, len)) return false;
    for (int j = 1; j <= k; j++) {
        if (len < static_cast<std::size_t>(2 * j)) break;
        for (const auto& p : doubled_universe(j))
            if (exact_pattern_match(p, w, len)) return true;
    }
    return false;
}

bool cut_number_via_patterns(const Word& w, int k) {
    return cut_number_via_patterns(w.data(), w.size(), k);
}

bool has_k_tangram_suffix(const Letter* w, std::size_t len, int k) {
    unsigned parity = 0;
    for (std::size_t start = len; start-- > 0;) {
        parity ^= 1u << w[start];
        if (parity != 0) continue;
        if (cut_number_via_patterns(w + start, len - start, k)) return true;
    }
    return false;
}

std::vector<std::pair<std::size_t, std::size_t>> scan_k_tangram_factors(const Word& w, int k) {
    std::set<std::pair<std::size_t, std::size_t>> spans;
    for (const auto& p : cached_Sk(k).patterns) {
        auto found = occurrence_spans(p, w);
        spans.insert(found.begin(), found.end());
    }
    return {spans.begin(), spans.end()};
}

} // namespace tangram
