#include "doctest.h"

#include "seernf/error.hpp"
#include "seernf/nf_bank.hpp"
#include "seernf/param_registry.hpp"

#include "test_support.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <utility>

using namespace seernf;

TEST_CASE("membership grades expose the kernel row with a domain check") {
    const auto w = membership_grades(8.25);
    CHECK(w[7] == 0.75);
    CHECK(w[8] == 0.25);
    CHECK_THROWS_AS(membership_grades(19.5), DomainError);
    CHECK_THROWS_AS(membership_grades(-0.5), DomainError);
}

TEST_CASE("sub-model evaluation reads the table back at centers") {
    const Registry reg = builtin_registry();
    const NFBank bank = NFBank::from_registry_defaults(reg);
    for (std::size_t i = 0; i < bank.size(); ++i)
        for (int r = 1; r <= 18; ++r)
            CHECK(evaluate_submodel(bank.at(i), r) ==
                  reg.at(i).defaults[static_cast<std::size_t>(r - 1)]);
}

TEST_CASE("sub-model evaluation interpolates linearly between centers") {
    const Registry reg = builtin_registry();
    const NFBank bank = NFBank::from_registry_defaults(reg);
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> u(1.0, 18.0);
    for (int i = 0; i < 500; ++i) {
        const double x = u(gen);
        const int lo = static_cast<int>(std::floor(x));
        const double f = x - lo;
        const std::size_t pi = static_cast<std::size_t>(i) % bank.size();
        const auto& c = bank.at(pi).consequents;
        const double expected =
            (1.0 - f) * c[static_cast<std::size_t>(lo - 1)] +
            f * c[static_cast<std::size_t>(std::min(lo, 17))];
        CHECK(evaluate_submodel(bank.at(pi), x) ==
              doctest::Approx(expected).epsilon(1e-15));
    }
}

TEST_CASE("monotone projection matches the frozen least-squares references") {
    using V = std::vector<double>;
    CHECK(project_monotone(V{2.0, 1.0}, Direction::Increasing) == V{1.5, 1.5});
    CHECK(project_monotone(V{1.2, 1.3, 1.0}, Direction::Decreasing) ==
          V{1.25, 1.25, 1.0});
    CHECK(project_monotone(V{1.0, 0.8, 1.1, 0.9, 1.05}, Direction::Increasing) ==
          V{0.9, 0.9, 1.0, 1.0, 1.05});
    CHECK(project_monotone(V{3.0, 2.0, 1.0}, Direction::Increasing) == V{2.0, 2.0, 2.0});
    CHECK(project_monotone(V{1.0, 2.0, 3.0}, Direction::Decreasing) == V{2.0, 2.0, 2.0});
}

TEST_CASE("monotone projection returns feasible input unchanged") {
    const std::vector<double> inc{0.5, 0.7, 0.7, 0.9};
    CHECK(project_monotone(inc, Direction::Increasing) == inc);
    const std::vector<double> dec{0.9, 0.7, 0.7, 0.5};
    CHECK(project_monotone(dec, Direction::Decreasing) == dec);
}

TEST_CASE("monotone projection properties hold on random input") {
    std::mt19937_64 gen(32);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 17);
        std::vector<double> v(n);
        for (double& x : v) x = u(gen);
        const Direction dir =
            trial % 2 == 0 ? Direction::Increasing : Direction::Decreasing;
        const std::vector<double> p = project_monotone(v, dir);
        REQUIRE(p.size() == n);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (dir == Direction::Increasing)
                CHECK(p[i] <= p[i + 1]);
            else
                CHECK(p[i] >= p[i + 1]);
        }
        // block means preserve the total
        const double sv = std::accumulate(v.begin(), v.end(), 0.0);
        const double sp = std::accumulate(p.begin(), p.end(), 0.0);
        CHECK(sp == doctest::Approx(sv).epsilon(1e-12));
        // idempotent
        CHECK(project_monotone(p, dir) == p);
    }
}

TEST_CASE("monotone projection rejects non-finite input") {
    CHECK_THROWS_AS(project_monotone(
                        std::vector<double>{1.0, std::numeric_limits<double>::quiet_NaN()},
                        Direction::Increasing),
                    InputError);
}

TEST_CASE("bank defaults copy the registry tables") {
    const Registry reg = builtin_registry();
    const NFBank bank = NFBank::from_registry_defaults(reg);
    REQUIRE(bank.size() == reg.size());
    for (std::size_t i = 0; i < reg.size(); ++i) {
        CHECK(bank.at(i).param_id == reg.at(i).mnemonic);
        CHECK(bank.at(i).direction == reg.at(i).direction);
        for (int r = 0; r < 18; ++r)
            CHECK(bank.at(i).consequents[r] == reg.at(i).defaults[r]);
    }
    check_bank_invariants(bank, reg); // must not throw
}

TEST_CASE("aligned bank evaluation checks the rating count") {
    const Registry reg = builtin_registry();
    const NFBank bank = NFBank::from_registry_defaults(reg);
    std::mt19937_64 gen(33);
    auto ratings = test::random_integer_ratings(gen, reg.size());
    const auto values = evaluate_bank(bank, reg, ratings);
    REQUIRE(values.size() == reg.size());
    for (std::size_t i = 0; i < reg.size(); ++i)
        CHECK(values[i] == evaluate_submodel(bank.at(i), ratings[i].x));
    ratings.pop_back();
    CHECK_THROWS_AS(evaluate_bank(bank, reg, ratings), InputError);
}

TEST_CASE("keyed bank evaluation names missing and unknown parameters") {
    const Registry reg = builtin_registry();
    const NFBank bank = NFBank::from_registry_defaults(reg);
    std::map<std::string, RatingPosition> ratings;
    for (const ParameterDefinition& p : reg.parameters())
        ratings[p.mnemonic] = parse_rating("Hi");
    const auto values = evaluate_bank(bank, reg, ratings);
    for (std::size_t i = 0; i < reg.size(); ++i)
        CHECK(values[i] == reg.at(i).defaults[10]);

    ratings.erase("TURN");
    CHECK_THROWS_WITH_AS(evaluate_bank(bank, reg, ratings),
                         "no rating for parameter TURN", InputError);
    ratings["TURN"] = parse_rating("Hi");
    ratings["BOGUS"] = parse_rating("Hi");
    CHECK_THROWS_WITH_AS(evaluate_bank(bank, reg, ratings),
                         "rating for unknown parameter BOGUS", InputError);
}

TEST_CASE("bank invariants catch broken banks") {
    const Registry reg = builtin_registry();
    SUBCASE("monotonicity violation") {
        NFBank bank = NFBank::from_registry_defaults(reg);
        bank.models[0].consequents[4] = bank.models[0].consequents[3] + 1.0;
        CHECK_THROWS_AS(check_bank_invariants(bank, reg), InputError);
    }
    SUBCASE("non-positive consequent") {
        NFBank bank = NFBank::from_registry_defaults(reg);
        bank.models[2].consequents[0] = 0.0;
        CHECK_THROWS_AS(check_bank_invariants(bank, reg), InputError);
    }
    SUBCASE("wrong parameter in a slot") {
        NFBank bank = NFBank::from_registry_defaults(reg);
        std::swap(bank.models[0], bank.models[1]);
        CHECK_THROWS_AS(check_bank_invariants(bank, reg), InputError);
    }
    SUBCASE("direction mismatch") {
        NFBank bank = NFBank::from_registry_defaults(reg);
        bank.models[6].direction = Direction::Decreasing; // TURN is increasing
        CHECK_THROWS_AS(check_bank_invariants(bank, reg), InputError);
    }
}

TEST_CASE("bank serialization round-trips bitwise") {
    const Registry reg = builtin_registry();
    std::mt19937_64 gen(34);
    const NFBank bank = test::perturbed_bank(reg, gen);
    const NFBank back = parse_bank(serialize_bank(bank, reg), reg);
    REQUIRE(back.size() == bank.size());
    for (std::size_t i = 0; i < bank.size(); ++i) {
        CHECK(back.at(i).param_id == bank.at(i).param_id);
        for (int r = 0; r < 18; ++r)
            CHECK(back.at(i).consequents[r] == bank.at(i).consequents[r]);
    }
}

TEST_CASE("bank parsing validates against the registry") {
    const Registry reg = builtin_registry();
    const NFBank bank = NFBank::from_registry_defaults(reg);
    std::string text = serialize_bank(bank, reg);

    SUBCASE("bad header") {
        CHECK_THROWS_AS(parse_bank("seer-bank v2\n", reg), ParseError);
    }
    SUBCASE("missing parameter") {
        const auto from = text.find("TURN");
        const auto to = text.find('\n', from);
        text.erase(from, to - from + 1);
        CHECK_THROWS_AS(parse_bank(text, reg), ParseError);
    }
    SUBCASE("unknown parameter") {
        const auto from = text.find("TURN");
        text.replace(from, 4, "TRUN");
        CHECK_THROWS_AS(parse_bank(text, reg), ParseError);
    }
}
