#include "tangram/bounds.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tangram {

std::int64_t LinearForm::eval(const std::vector<std::int64_t>& lengths) const {
    std::int64_t s = 0;
    for (std::size_t v = 0; v < coeffs.size(); v++) s += coeffs[v] * lengths[v];
    return s;
}

std::string LinearForm::str() const {
    std::string s;
    for (std::size_t v = 0; v < coeffs.size(); v++) {
        std::int64_t c = coeffs[v];
        if (c == 0) continue;
        if (s.empty()) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        std::int64_t a = c < 0 ? -c : c;
        if (a != 1) s += std::to_string(a);
        s.push_back(static_cast<char>('a' + v));
    }
    return s.empty() ? "0" : s;
}

static void divide_by_gcd(std::vector<std::int64_t>& coeffs, std::int64_t* cap = nullptr) {
    std::int64_t g = cap ? (*cap < 0 ? -*cap : *cap) : 0;
    for (auto c : coeffs) g = std::gcd(g, c < 0 ? -c : c);
    if (g > 1) {
        for (auto& c : coeffs) c /= g;
        if (cap) *cap /= g;
    }
}

void DisjunctiveConstraint::normalize() {
    divide_by_gcd(period_sum.coeffs, &period_cap);
    divide_by_gcd(exponent_form.coeffs);
}

bool DisjunctiveConstraint::satisfied(const std::vector<std::int64_t>& lengths) const {
    return period_sum.eval(lengths) <= period_cap || exponent_form.eval(lengths) <= 0;
}

std::string DisjunctiveConstraint::str() const {
    return "(" + period_sum.str() + " <= " + std::to_string(period_cap) + ") or (" +
           exponent_form.str() + " <= 0)";
}

ConstraintSystem derive_constraints(const Pattern& p, Rational alpha, std::size_t min_period) {
    if (!p.doubled_exactly_twice())
        throw std::invalid_argument(
            "derive_constraints: every variable must occur exactly twice in " + p.str());
    if (!(alpha > Rational(1)))
        throw std::invalid_argument("derive_constraints: alpha must be > 1");

    const int nv = p.variable_count();
    const std::int64_t num = alpha.num();
    const std::int64_t den = alpha.den();

    ConstraintSystem cs{p, alpha, min_period, {}};
    for (int v = 0; v < nv; v++) {
        std::size_t first = p.length(), second = p.length();
        for (std::size_t i = 0; i < p.length(); i++) {
            if (p[i] == v) {
                if (first == p.length()) first = i;
                else second = i;
            }
        }
        // m(P[first..second]) is a repetition: period = |m(P[first..second-1])|,
        // total = period + x_v, so the freeness disjunction is
        //   period <= n-1   or   den*(period + x_v) <= num*period.
        std::vector<std::int64_t> period_counts(nv, 0);
        for (std::size_t i = first; i < second; i++) period_counts[p[i]]++;

        DisjunctiveConstraint c;
        c.variable = v;
        c.span_begin = first;
        c.span_end = second;
        c.period_sum.coeffs = period_counts;
        c.period_cap = static_cast<std::int64_t>(min_period) - 1;
        // den*x_v - (num-den) * period <= 0, integer coefficients
        c.exponent_form.coeffs.assign(nv, 0);
        for (int u = 0; u < nv; u++) c.exponent_form.coeffs[u] -= (num - den) * period_counts[u];
        c.exponent_form.coeffs[v] += den;
        c.normalize();
        cs.constraints.push_back(std::move(c));
    }
    return cs;
}

namespace {

// Exhaustive nested loops over [1, cap)^nv with per-constraint early
// rejection: each disjunction is tested at the depth where its last
// variable gets a value (partial sums are maintained incrementally), and
// deeper recursion is cut off as soon as one constraint is dead. An
// incumbent check discards subtrees that cannot beat the best total.
struct BoundSearch {
    std::int64_t cap;
    int nv;
    std::vector<std::int64_t> lengths;
    std::int64_t best = -1;
    std::vector<std::int64_t> witness;

    struct Row {
        std::vector<std::int64_t> period_coeffs;
        std::vector<std::int64_t> exp_coeffs;
        std::int64_t period_cap;
        int completion_depth;
    };
    std::vector<Row> rows;
    std::vector<std::int64_t> period_partial;
    std::vector<std::int64_t> exp_partial;

    void setup(const ConstraintSystem& cs) {
        nv = cs.pattern.variable_count();
        lengths.assign(nv, 0);
        for (const auto& c : cs.constraints) {
            Row row;
            row.period_coeffs = c.period_sum.coeffs;
            row.exp_coeffs = c.exponent_form.coeffs;
            row.period_cap = c.period_cap;
            row.completion_depth = 0;
            for (int v = 0; v < nv; v++)
                if (row.period_coeffs[v] != 0 || row.exp_coeffs[v] != 0)
                    row.completion_depth = v;
            rows.push_back(std::move(row));
        }
        period_partial.assign(rows.size(), 0);
        exp_partial.assign(rows.size(), 0);
    }

    void run(int v, std::int64_t partial_sum) {
        if (v == nv) {
            if (2 * partial_sum > best) {
                best = 2 * partial_sum;
                witness = lengths;
            }
            return;
        }
        if (best >= 0 && 2 * (partial_sum + (cap - 1) * (nv - v)) <= best) return;
        for (std::int64_t x = 1; x < cap; x++) {
            lengths[v] = x;
            bool alive = true;
            for (std::size_t i = 0; i < rows.size(); i++) {
                period_partial[i] += rows[i].period_coeffs[v] * x;
                exp_partial[i] += rows[i].exp_coeffs[v] * x;
                if (rows[i].completion_depth == v && period_partial[i] > rows[i].period_cap &&
                    exp_partial[i] > 0)
                    alive = false;
            }
            if (alive) run(v + 1, partial_sum + x);
            for (std::size_t i = 0; i < rows.size(); i++) {
                period_partial[i] -= rows[i].period_coeffs[v] * x;
                exp_partial[i] -= rows[i].exp_coeffs[v] * x;
            }
        }
        lengths[v] = 0;
    }
};

} // namespace

std::optional<BoundResult> max_occurrence_length(const ConstraintSystem& cs, std::int64_t cap) {
    if (cap < 2) throw std::invalid_argument("max_occurrence_length: cap must be >= 2");
    BoundSearch search;
    search.cap = cap;
    search.setup(cs);
    search.run(0, 0);
    if (search.best < 0) return std::nullopt;
    return BoundResult{search.best, search.witness};
}

std::optional<BoundResult> max_occurrence_length(const Pattern& p, Rational alpha,
                                                 std::size_t min_period, std::int64_t cap) {
    return max_occurrence_length(derive_constraints(p, alpha, min_period), cap);
}

bool validates_infeasibility(const ConstraintSystem& cs,
                             const std::vector<std::int64_t>& multipliers) {
    if (multipliers.size() != cs.constraints.size()) return false;
    const int nv = cs.pattern.variable_count();
    std::vector<std::int64_t> combo(nv, 0);
    for (std::size_t i = 0; i < multipliers.size(); i++) {
        if (multipliers[i] < 0) return false;
        for (int v = 0; v < nv; v++)
            combo[v] += multipliers[i] * cs.constraints[i].exponent_form.coeffs[v];
    }
    bool some_positive = false;
    for (auto c : combo) {
        if (c < 0) return false;
        if (c > 0) some_positive = true;
    }
    return some_positive;
}

std::optional<std::vector<std::int64_t>> infeasibility_witness(const ConstraintSystem& cs,
                                                               std::int64_t max_multiplier) {
    const std::size_t k = cs.constraints.size();
    std::vector<std::int64_t> lambda(k, 0);
    // lexicographic sweep over [0, max]^k
    for (;;) {
        if (validates_infeasibility(cs, lambda)) return lambda;
        std::size_t i = k;
        while (i-- > 0) {
            if (lambda[i] < max_multiplier) {
                lambda[i]++;
                std::fill(lambda.begin() + i + 1, lambda.end(), 0);
                break;
            }
            if (i == 0) return std::nullopt;
        }
    }
}

} // namespace tangram
