#include <doctest.h>

#include <stdexcept>

#include "tangram/bounds.hpp"
#include "tangram/pipeline.hpp"

using namespace tangram;

namespace {

const Rational kBeta(5, 4);
constexpr std::size_t kPeriod = 9;

// normalized clause as (coeffs, cap) for comparison
std::pair<std::vector<std::int64_t>, std::int64_t> period_clause(const DisjunctiveConstraint& c) {
    return {c.period_sum.coeffs, c.period_cap};
}

} // namespace

TEST_CASE("constraint derivation replays the worked example") {
    ConstraintSystem cs = derive_constraints(Pattern::parse("ABCDACBD"), kBeta, kPeriod);
    REQUIRE(cs.constraints.size() == 4);

    // (1) from the A...A factor: a+b+c+d <= 8  or  3a <= b+c+d
    CHECK(period_clause(cs.constraints[0]) ==
          std::pair<std::vector<std::int64_t>, std::int64_t>{{1, 1, 1, 1}, 8});
    CHECK(cs.constraints[0].exponent_form.coeffs == std::vector<std::int64_t>{3, -1, -1, -1});
    // (2) from B...B: a+b+2c+d <= 8  or  3b <= a+2c+d
    CHECK(period_clause(cs.constraints[1]) ==
          std::pair<std::vector<std::int64_t>, std::int64_t>{{1, 1, 2, 1}, 8});
    CHECK(cs.constraints[1].exponent_form.coeffs == std::vector<std::int64_t>{-1, 3, -2, -1});
    // (3) from C...C: a+c+d <= 8  or  3c <= a+d
    CHECK(period_clause(cs.constraints[2]) ==
          std::pair<std::vector<std::int64_t>, std::int64_t>{{1, 0, 1, 1}, 8});
    CHECK(cs.constraints[2].exponent_form.coeffs == std::vector<std::int64_t>{-1, 0, 3, -1});
    // (4) from D...D: a+b+c+d <= 8  or  3d <= a+b+c
    CHECK(period_clause(cs.constraints[3]) ==
          std::pair<std::vector<std::int64_t>, std::int64_t>{{1, 1, 1, 1}, 8});
    CHECK(cs.constraints[3].exponent_form.coeffs == std::vector<std::int64_t>{-1, -1, -1, 3});
}

TEST_CASE("constraint derivation for AA and ABACBC") {
    ConstraintSystem aa = derive_constraints(Pattern::parse("AA"), kBeta, kPeriod);
    REQUIRE(aa.constraints.size() == 1);
    CHECK(period_clause(aa.constraints[0]) ==
          std::pair<std::vector<std::int64_t>, std::int64_t>{{1}, 8});
    CHECK(aa.constraints[0].exponent_form.coeffs == std::vector<std::int64_t>{1}); // 3a<=0 reduced

    ConstraintSystem cs = derive_constraints(Pattern::parse("ABACBC"), kBeta, kPeriod);
    REQUIRE(cs.constraints.size() == 3);
    CHECK(period_clause(cs.constraints[0]) ==
          std::pair<std::vector<std::int64_t>, std::int64_t>{{1, 1, 0}, 8});
    CHECK(cs.constraints[0].exponent_form.coeffs == std::vector<std::int64_t>{3, -1, 0});
    CHECK(period_clause(cs.constraints[1]) ==
          std::pair<std::vector<std::int64_t>, std::int64_t>{{1, 1, 1}, 8});
    CHECK(cs.constraints[1].exponent_form.coeffs == std::vector<std::int64_t>{-1, 3, -1});
    CHECK(period_clause(cs.constraints[2]) ==
          std::pair<std::vector<std::int64_t>, std::int64_t>{{0, 1, 1}, 8});
    CHECK(cs.constraints[2].exponent_form.coeffs == std::vector<std::int64_t>{0, -1, 3});

    CHECK_THROWS_AS(derive_constraints(Pattern::parse("ABA"), kBeta, kPeriod),
                    std::invalid_argument);
}

TEST_CASE("bounds for the worked rows") {
    auto bound = [](const char* name) {
        auto res = max_occurrence_length(Pattern::parse(name), kBeta, kPeriod, 100);
        REQUIRE(res);
        return res->bound;
    };
    CHECK(bound("ABCDACBD") == 24);
    CHECK(bound("AA") == 16);
    CHECK(bound("ABCDBDAC") == 44);
    CHECK(bound("ABACBC") == 30);
}

TEST_CASE("bound witnesses are feasible and maximal") {
    ConstraintSystem cs = derive_constraints(Pattern::parse("ABCDACBD"), kBeta, kPeriod);
    auto res = max_occurrence_length(cs, 100);
    REQUIRE(res);
    std::int64_t total = 0;
    for (auto x : res->witness) {
        CHECK(x >= 1);
        CHECK(x < 100);
        total += x;
    }
    CHECK(2 * total == res->bound);
    for (const auto& c : cs.constraints) CHECK(c.satisfied(res->witness));

    // sampled assignments above the bound must violate something
    for (std::int64_t a = 1; a < 20; a++)
        for (std::int64_t b = 1; b < 20; b++) {
            std::vector<std::int64_t> lens = {a, b, a + 1, b + 2};
            std::int64_t sum = a + b + (a + 1) + (b + 2);
            if (2 * sum <= res->bound) continue;
            bool all = true;
            for (const auto& c : cs.constraints) all = all && c.satisfied(lens);
            CHECK_FALSE(all);
        }
}

TEST_CASE("infeasibility witnesses") {
    ConstraintSystem cs = derive_constraints(Pattern::parse("ABCDACBD"), kBeta, kPeriod);
    // the published combination certifies the contradiction
    CHECK(validates_infeasibility(cs, {6, 4, 7, 6}));
    auto found = infeasibility_witness(cs);
    REQUIRE(found);
    CHECK(validates_infeasibility(cs, *found));

    ConstraintSystem aa = derive_constraints(Pattern::parse("AA"), kBeta, kPeriod);
    auto trivial = infeasibility_witness(aa);
    REQUIRE(trivial);
    CHECK(validates_infeasibility(aa, *trivial));

    CHECK_FALSE(validates_infeasibility(cs, {0, 0, 0, 0}));
    CHECK_FALSE(validates_infeasibility(cs, {1, 0, 0}));
}

TEST_CASE("every published row has an infeasibility certificate") {
    for (const auto& row : occurrence_bound_rows()) {
        ConstraintSystem cs = derive_constraints(row.pattern, kBeta, kPeriod);
        auto found = infeasibility_witness(cs);
        REQUIRE_MESSAGE(found, row.pattern.str());
        CHECK(validates_infeasibility(cs, *found));
    }
}

TEST_CASE("reverse symmetry of bounds, spot checks") {
    for (const char* name : {"ABCACB", "ABCDBDAC", "ABCDADCB"}) {
        Pattern p = Pattern::parse(name);
        auto forward = max_occurrence_length(p, kBeta, kPeriod, 100);
        auto backward = max_occurrence_length(reverse(p), kBeta, kPeriod, 100);
        REQUIRE(forward);
        REQUIRE(backward);
        CHECK(forward->bound == backward->bound);
    }
}

TEST_CASE("constraints stay exact after clearing denominators") {
    // alpha = 7/5: exponent clause den*x_v <= (num-den)*period, i.e.
    // 5a <= 2(b+c+d) for the outer variable of ABCDACBD
    ConstraintSystem cs = derive_constraints(Pattern::parse("ABCDACBD"), Rational(7, 5), 9);
    CHECK(cs.constraints[0].exponent_form.coeffs == std::vector<std::int64_t>{3, -2, -2, -2});
}
