#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sscl/error.hpp"
#include "sscl/initial_data.hpp"
#include "sscl/pathwise.hpp"

using namespace sscl;

namespace {

Field sine(std::size_t n, double amp = 1.0, double mode = 1.0) {
    const double p[] = {amp, mode};
    return make_initial("sine", p, 1, n);
}

RecordOptions uniform_record(double horizon, int count) {
    RecordOptions r;
    for (int k = 1; k <= count; ++k) r.times.push_back(horizon * k / count);
    r.times.back() = horizon;
    return r;
}

}  // namespace

TEST(Solve, ConstantDataStaysConstant) {
    const auto path = DrivingPath::sample_brownian(3, 1, 2.0, 32);
    const auto rec = solve(Field(64, -0.4), burgers(1), path, uniform_record(2.0, 4));
    ASSERT_EQ(rec.times.size(), 5u);
    EXPECT_EQ(rec.times.front(), 0.0);
    for (std::size_t k = 0; k < 64; ++k) EXPECT_EQ(rec.final_state[k], -0.4);
    EXPECT_EQ(rec.ledger.total_pos(), 0.0);
    for (const auto& s : rec.trace) EXPECT_LE(s.l1_to_mean, 1e-15);
}

TEST(Solve, IdentityPathMatchesDeterministicSolve) {
    const Field u0 = sine(128);
    const auto r = uniform_record(1.5, 3);
    const auto a = solve(u0, burgers(1), DrivingPath::identity(1, 1.5, 96), r);
    const auto b = solve_deterministic(u0, burgers(1), 1.5, r);
    for (std::size_t k = 0; k < u0.size(); ++k) EXPECT_EQ(a.final_state[k], b.final_state[k]);
    EXPECT_EQ(a.ledger.total_pos(), b.ledger.total_pos());
}

TEST(Solve, L1ContractionBetweenData) {
    const auto path = DrivingPath::sample_brownian(9, 1, 3.0, 60).refine(2);
    const Field u = sine(128), w = sine(128, 0.6, 2.0);
    RecordOptions r = uniform_record(3.0, 6);
    r.snapshots = true;
    const auto a = solve(u, burgers(1), path, r);
    const auto b = solve(w, burgers(1), path, r);
    const double d0 = l1_distance(u, w);
    for (std::size_t k = 0; k < a.snapshots.size(); ++k) EXPECT_LE(l1_distance(a.snapshots[k], b.snapshots[k]), d0 + 1e-13);
}

TEST(Solve, ZeroDataStaysZero) {
    const auto rec = solve_deterministic(Field(32), power_law(2), 5.0, uniform_record(5.0, 5));
    EXPECT_EQ(rec.final_state.linf(), 0.0);
}

TEST(Solve, NormTracesAreMonotone) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto path = DrivingPath::sample_brownian(seed, 1, 4.0, 40).refine(1);
        const double p[] = {6.0, static_cast<double>(seed), 1.0};
        const Field u0 = make_initial("random_fourier", p, 1, 128);
        const auto rec = solve(u0, power_law(2), path, uniform_record(4.0, 16));
        EXPECT_EQ(rec.growth_m, 1);
        for (std::size_t k = 1; k < rec.trace.size(); ++k) {
            const auto &prev = rec.trace[k - 1], &cur = rec.trace[k];
            EXPECT_NEAR(cur.mean, rec.mean0, 1e-10);
            EXPECT_LE(cur.l1_to_mean, prev.l1_to_mean + 1e-13);
            EXPECT_LE(cur.l2, prev.l2 + 1e-13);
            EXPECT_LE(cur.l2pm, prev.l2pm + 1e-13);
            EXPECT_LE(cur.linf, prev.linf + 1e-13);
            EXPECT_LE(cur.bv, prev.bv + 1e-12);
        }
    }
}

TEST(Solve, TwoDimensionalMeanConserved) {
    const double p[] = {1.0, 1.0};
    const Field u0 = make_initial("sine", p, 2, 32);
    const auto path = DrivingPath::sample_brownian(4, 2, 1.0, 16);
    const auto rec = solve(u0, diagonal_power(1), path, uniform_record(1.0, 4));
    EXPECT_NEAR(rec.final_state.mean(), u0.mean(), 1e-12);
    EXPECT_LE(rec.trace.back().l1_to_mean, rec.trace.front().l1_to_mean);
}

TEST(Solve, ComponentMismatchThrows) {
    const auto path = DrivingPath::sample_brownian(1, 2, 1.0, 4);
    EXPECT_THROW(solve(sine(16), burgers(1), path), std::invalid_argument);
    EXPECT_THROW(solve(sine(16), diagonal_power(1), path), std::invalid_argument);
}

TEST(Solve, NonFiniteDataRejected) {
    Field u0 = sine(16);
    u0[2] = std::numeric_limits<double>::infinity();
    EXPECT_THROW(solve(u0, burgers(1), DrivingPath::sample_brownian(5, 1, 1.0, 4)), std::invalid_argument);
}

TEST(Solve, RecordTimesSplitSegmentsExactly) {
    const auto path = DrivingPath::sample_brownian(2, 1, 1.0, 3);
    RecordOptions r;
    r.times = {0.1, 0.5, 0.77, 1.0};
    const auto rec = solve(sine(32), burgers(1), path, r);
    ASSERT_EQ(rec.trace.size(), 5u);
    for (std::size_t k = 0; k < r.times.size(); ++k) EXPECT_EQ(rec.trace[k + 1].t, r.times[k]);
    EXPECT_EQ(rec.ledger.buckets(), 5u);
}

TEST(Solve, PathRefinementIsCauchyOnAverage) {
    // Single realizations fluctuate with the bridge draws; the seed average must not.
    const Field u0 = sine(256);
    const int seeds = 48;
    std::vector<double> gaps(4, 0.0);
    for (int s = 0; s < seeds; ++s) {
        const auto base = DrivingPath::sample_brownian(static_cast<std::uint64_t>(s), 1, 1.0, 4);
        Field prev = solve(u0, burgers(1), base).final_state;
        for (int level = 1; level <= 4; ++level) {
            Field next = solve(u0, burgers(1), base.refine(level)).final_state;
            gaps[level - 1] += l1_distance(prev, next) / seeds;
            prev = std::move(next);
        }
    }
    for (std::size_t k = 0; k + 1 < gaps.size(); ++k) EXPECT_LT(gaps[k + 1], gaps[k]) << "level " << k;
}

TEST(Source, ZeroCoefficientMatchesSolve) {
    const auto path = DrivingPath::sample_brownian(6, 1, 1.0, 16);
    const auto a = solve(sine(64), burgers(1), path, uniform_record(1.0, 2));
    const auto b = solve_with_source(sine(64), burgers(1), path, 0.0, uniform_record(1.0, 2));
    for (std::size_t k = 0; k < 64; ++k) EXPECT_EQ(a.final_state[k], b.final_state[k]);
    EXPECT_EQ(b.ledger.total_neg(), 0.0);
}

TEST(Source, ExponentialMeanAndPositivity) {
    const double p[] = {0.5, 1.0};
    Field u0 = make_initial("sine", p, 1, 128);
    for (std::size_t k = 0; k < u0.size(); ++k) u0[k] += 0.5;
    const auto path = DrivingPath::sample_brownian(8, 1, 1.0, 64);
    RecordOptions r = uniform_record(1.0, 8);
    r.snapshots = true;
    const auto rec = solve_with_source(u0, burgers(1), path, 1.0, r);
    for (std::size_t k = 0; k < rec.snapshots.size(); ++k) {
        EXPECT_GE(rec.snapshots[k].min(), 0.0);
        EXPECT_NEAR(rec.snapshots[k].mean(), u0.mean() * std::exp(rec.times[k]), 1e-6);
    }
    EXPECT_GT(rec.ledger.total_neg(), 0.0);
    EXPECT_TRUE(std::isfinite(rec.ledger.total_variation()));
}

TEST(Record, CsvCarriesCommentsAndHeader) {
    RecordOptions r = uniform_record(1.0, 2);
    r.w_lambdas = {0.5};
    const auto rec = solve_deterministic(sine(32), burgers(1), 1.0, r);
    std::stringstream ss;
    write_record_csv(rec, ss, {"seed = 4"});
    std::string line;
    std::getline(ss, line);
    EXPECT_EQ(line, "# seed = 4");
    std::getline(ss, line);
    EXPECT_EQ(line, "t,l1_to_mean,l2,l2pm,bv,w_lambda_0.5");
    int rows = 0;
    while (std::getline(ss, line)) ++rows;
    EXPECT_EQ(rows, 3);
}
