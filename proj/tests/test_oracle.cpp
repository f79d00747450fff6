#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "helpers.hpp"
#include "netctrl/oracle.hpp"

using namespace netctrl;

namespace {

std::pair<Matrix<Rational>, Matrix<Rational>> star_at(const std::vector<Rational>& w) {
    const LinearParameterization param = build_parameterization(testutil::star4());
    return assemble_matrices(param, WeightAssignment(w));
}

}  // namespace

TEST_CASE("kalman matrix of a scalar system") {
    Matrix<Rational> a(1, 1);
    a(0, 0) = -1;
    Matrix<Rational> b(1, 1);
    b(0, 0) = 1;
    const Matrix<Rational> k = kalman_matrix(a, b);
    REQUIRE(k.rows() == 1);
    REQUIRE(k.cols() == 1);
    CHECK(k(0, 0) == 1);
    CHECK(controllability_rank(a, b) == 1);
}

TEST_CASE("kalman matrix of the path on three nodes") {
    const LinearParameterization param = build_parameterization(testutil::path3());
    const auto [a, b] = assemble_matrices(param, WeightAssignment({2, 5}));
    const Matrix<Rational> k = kalman_matrix(a, b);
    REQUIRE(k.rows() == 2);
    REQUIRE(k.cols() == 2);
    CHECK(k(0, 0) == 0);
    CHECK(k(0, 1) == 10);
    CHECK(k(1, 0) == 5);
    CHECK(k(1, 1) == -35);
    CHECK(controllability_rank(a, b) == 2);
}

TEST_CASE("kalman rank of the star depends on the weights") {
    const auto [a1, b1] = star_at({1, 1, 1});
    CHECK(controllability_rank(a1, b1) == 2);

    const auto [a2, b2] = star_at({1, 1, 2});
    CHECK(controllability_rank(a2, b2) == 3);

    const auto [a3, b3] = star_at({2, 3, 5});
    CHECK(controllability_rank(a3, b3) == 3);

    const auto [a4, b4] = star_at({Rational(1, 2), 2, 3});
    CHECK(controllability_rank(a4, b4) == 3);
}

TEST_CASE("kalman rows of an unreachable component are zero") {
    const LinearParameterization param = build_parameterization(testutil::disconnected5());
    const auto [a, b] = assemble_matrices(param, WeightAssignment({1, 1, 1}));
    const Matrix<Rational> k = kalman_matrix(a, b);
    REQUIRE(k.rows() == 4);
    REQUIRE(k.cols() == 4);
    for (int i = 2; i < 4; ++i)
        for (int j = 0; j < k.cols(); ++j) REQUIRE(k(i, j) == 0);
    CHECK(rank(k) == 2);
}

TEST_CASE("kalman rank is zero for a zero input matrix") {
    Matrix<Rational> a(2, 2);
    a(0, 1) = 1;
    const Matrix<Rational> b(2, 1);
    CHECK(controllability_rank(a, b) == 0);
}

TEST_CASE("kalman matrix validates shapes") {
    const Matrix<Rational> a(2, 3);
    const Matrix<Rational> b(2, 1);
    CHECK_THROWS_AS(kalman_matrix(a, b), std::invalid_argument);
    const Matrix<Rational> square(2, 2);
    const Matrix<Rational> tall(3, 1);
    CHECK_THROWS_AS(kalman_matrix(square, tall), std::invalid_argument);
}

TEST_CASE("weight draws are deterministic, in range and trial-dependent") {
    OracleConfig config;
    config.seed = 42;
    config.min_weight = 1;
    config.max_weight = 1000000;

    const WeightAssignment first = draw_weights(6, config, 0);
    const WeightAssignment again = draw_weights(6, config, 0);
    REQUIRE(first.size() == 6);
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first.values[i] == again.values[i]);
        CHECK(first.values[i] >= 1);
        CHECK(first.values[i] <= 1000000);
    }

    const WeightAssignment other = draw_weights(6, config, 1);
    bool any_differ = false;
    for (std::size_t i = 0; i < first.size(); ++i) any_differ |= first.values[i] != other.values[i];
    CHECK(any_differ);

    config.seed = 43;
    const WeightAssignment reseeded = draw_weights(6, config, 0);
    bool seed_matters = false;
    for (std::size_t i = 0; i < first.size(); ++i) seed_matters |= first.values[i] != reseeded.values[i];
    CHECK(seed_matters);
}

TEST_CASE("weight draws cover a small range") {
    OracleConfig config;
    config.seed = 7;
    config.min_weight = 2;
    config.max_weight = 4;
    std::set<int> seen;
    for (std::uint64_t trial = 0; trial < 64; ++trial) {
        const WeightAssignment w = draw_weights(3, config, trial);
        for (const Rational& v : w.values) {
            REQUIRE(v >= 2);
            REQUIRE(v <= 4);
            seen.insert(v.convert_to<int>());
        }
    }
    CHECK(seen == std::set<int>{2, 3, 4});
}

TEST_CASE("oracle configuration is validated") {
    const CommunicationTopology topo = testutil::path3();
    OracleConfig config;
    config.trials = 0;
    CHECK_THROWS_AS(oracle_decide(topo, config), std::invalid_argument);
    config = OracleConfig{};
    config.min_weight = 5;
    config.max_weight = 4;
    CHECK_THROWS_AS(oracle_decide(topo, config), std::invalid_argument);
    config = OracleConfig{};
    config.min_weight = -1;
    config.max_weight = 1;
    CHECK_THROWS_AS(oracle_decide(topo, config), std::invalid_argument);
}

TEST_CASE("oracle certifies the star and its witness checks out") {
    const LinearParameterization param = build_parameterization(testutil::star4());
    const OracleResult result = oracle_decide(testutil::star4(), OracleConfig{});
    CHECK(result.controllable);
    CHECK(result.rank_achieved == 3);
    CHECK(result.trials_run >= 1);
    REQUIRE(result.witness.has_value());
    const auto [a, b] = assemble_matrices(param, *result.witness);
    CHECK(controllability_rank(a, b) == 3);

    const OracleResult rerun = oracle_decide(testutil::star4(), OracleConfig{});
    CHECK(rerun.trials_run == result.trials_run);
    REQUIRE(rerun.witness.has_value());
    for (std::size_t i = 0; i < result.witness->size(); ++i)
        CHECK(rerun.witness->values[i] == result.witness->values[i]);

    OracleConfig single;
    single.trials = 1;
    const OracleResult one = oracle_decide(testutil::star4(), single);
    CHECK(one.controllable);
    CHECK(one.trials_run == 1);
}

TEST_CASE("oracle never certifies the disconnected network") {
    OracleConfig config;
    config.trials = 8;
    const OracleResult result = oracle_decide(testutil::disconnected5(), config);
    CHECK_FALSE(result.controllable);
    CHECK_FALSE(result.witness.has_value());
    CHECK(result.trials_run == 8);
    CHECK(result.rank_achieved == 2);
}

TEST_CASE("rank achieved is monotone in the trial budget") {
    int previous = 0;
    for (int trials = 1; trials <= 5; ++trials) {
        OracleConfig config;
        config.trials = trials;
        const OracleResult result = oracle_decide(testutil::disconnected5(), config);
        CHECK(result.rank_achieved >= previous);
        previous = result.rank_achieved;
    }
}

TEST_CASE("oracle handles the smallest network") {
    const OracleResult result = oracle_decide(make_topology(2, {2}, {{1, 2}}), OracleConfig{});
    CHECK(result.controllable);
    CHECK(result.rank_achieved == 1);
}

TEST_CASE("generic rank probes several assignments") {
    CHECK(generic_rank(build_parameterization(testutil::star4()), OracleConfig{}) == 3);
    CHECK(generic_rank(build_parameterization(testutil::disconnected5()), OracleConfig{}) == 3);
    CHECK(generic_rank(build_parameterization(make_topology(2, {2}, {{1, 2}})), OracleConfig{}) == 1);
    CHECK(generic_rank(build_parameterization(make_topology(3, {3}, {{1, 3}})), OracleConfig{}) == 1);

    const CommunicationTopology star_center = make_topology(4, {1}, {{1, 2}, {1, 3}, {1, 4}});
    CHECK(generic_rank(build_parameterization(star_center), OracleConfig{}) == 3);
}
