#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sscl/field.hpp"
#include "sscl/flux.hpp"
#include "sscl/fv.hpp"
#include "sscl/initial_data.hpp"
#include "sscl/kinetic.hpp"
#include "sscl/pathwise.hpp"

using namespace sscl;

namespace {

Field random_field(std::mt19937_64& g, std::size_t n, double amp = 1.0) {
    std::uniform_real_distribution<double> d(-amp, amp);
    Field f(n);
    for (std::size_t k = 0; k < n; ++k) f[k] = d(g);
    return f;
}

double kruzkov_direct(const Field& a, const Field& b, double c) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - c) - std::abs(b[k] - c);
    return 0.5 * s * a.cell_volume();
}

}  // namespace

TEST(Chi, Examples) {
    EXPECT_EQ(chi(2.0, 1.0), 1);
    EXPECT_EQ(chi(-1.0, -0.5), -1);
    EXPECT_EQ(chi(2.0, 3.0), 0);
    EXPECT_EQ(chi(2.0, -0.1), 0);
    EXPECT_EQ(chi(-1.0, 0.5), 0);
}

TEST(ChiField, ZeroFieldGivesZeros) {
    const auto xi = XiGrid{-1.0, 1.0, 20}.centers();
    for (double v : chi_field(Field(8), xi)) EXPECT_EQ(v, 0.0);
}

TEST(ChiField, TrapezoidIntegralOfUnitField) {
    const XiGrid g{-2.0, 2.0, 64};
    std::vector<double> nodes;
    for (std::size_t b = 0; b <= g.bins; ++b) nodes.push_back(g.edge(b));
    const auto c = chi_field(Field(4, 1.0), nodes);
    for (std::size_t cell = 0; cell < 4; ++cell) {
        double s = 0.0;
        for (std::size_t k = 0; k + 1 < nodes.size(); ++k)
            s += 0.5 * (std::abs(c[cell * nodes.size() + k]) + std::abs(c[cell * nodes.size() + k + 1])) * g.width();
        EXPECT_NEAR(s, 1.0, g.width());
    }
}

TEST(ChiField, SquaredNormBoundedByL1) {
    std::mt19937_64 gen(2);
    const Field u = random_field(gen, 50);
    const XiGrid g{-1.2, 1.2, 96};
    const auto c = chi_field(u, g.centers());
    double sq = 0.0;
    for (double v : c) sq += v * v * g.width() * u.cell_volume();
    EXPECT_LE(sq, u.l1() + g.width());
    EXPECT_NEAR(sq, u.l1(), g.width());
}

TEST(ChiField, UncoveredRangeThrows) {
    const auto xi = XiGrid{-0.5, 0.5, 10}.centers();
    EXPECT_THROW(chi_field(Field(4, 2.0), xi), std::invalid_argument);
}

TEST(ChiField, BinAveragesReconstructValues) {
    std::mt19937_64 gen(3);
    const Field u = random_field(gen, 40);
    const XiGrid g = XiGrid::covering(1.0, 37);
    const auto c = chi_field_binned(u, g);
    for (std::size_t k = 0; k < u.size(); ++k) {
        double s = 0.0;
        for (std::size_t b = 0; b < g.bins; ++b) s += c[k * g.bins + b] * g.width();
        EXPECT_NEAR(s, u[k], 1e-13);
    }
}

TEST(Kruzkov, MatchesDirectSum) {
    std::mt19937_64 gen(4);
    for (int trial = 0; trial < 20; ++trial) {
        const Field a = random_field(gen, 33), b = random_field(gen, 33);
        std::vector<double> c{-1.3, -0.7, -0.01, 0.0, 0.2, 0.99, 1.4};
        std::vector<double> out(c.size());
        kruzkov_decrease(a, b, c, out);
        for (std::size_t j = 0; j < c.size(); ++j) EXPECT_NEAR(out[j], kruzkov_direct(a, b, c[j]), 1e-14);
    }
}

TEST(GrowthDensity, MatchesTimeIntegralOfChiSource) {
    // Oracle: integral_0^1 chi(u(s), c) k u(s) ds with u(s) = u0 exp(k s), by fine midpoint rule.
    std::mt19937_64 gen(5);
    const Field before = random_field(gen, 12);
    const double k = 0.8;
    Field after = before;
    for (std::size_t i = 0; i < after.size(); ++i) after[i] *= std::exp(k);
    std::vector<double> c{-1.5, -0.6, -0.1, 0.05, 0.3, 0.9, 2.0};
    std::vector<double> out(c.size());
    growth_density(before, after, c, out);
    for (std::size_t j = 0; j < c.size(); ++j) {
        double oracle = 0.0;
        const int steps = 200000;
        for (std::size_t i = 0; i < before.size(); ++i)
            for (int s = 0; s < steps; ++s) {
                const double u = before[i] * std::exp(k * (s + 0.5) / steps);
                oracle += chi(u, c[j]) * k * u / steps;
            }
        oracle *= before.cell_volume();
        EXPECT_NEAR(out[j], oracle, 1e-5);
    }
}

TEST(Ledger, IdenticalStatesAddNothing) {
    std::mt19937_64 gen(6);
    const Field u = random_field(gen, 16);
    KineticLedger l(XiGrid::covering(1.0, 32), 1);
    EXPECT_EQ(l.accumulate(u, u, 0), 0.0);
    EXPECT_EQ(l.accumulate(Field(16, 0.3), Field(16, 0.3), 0), 0.0);
    EXPECT_EQ(l.total_pos(), 0.0);
}

TEST(Ledger, ShockStepDissipatesAtTheExactRate) {
    // A = u^2, states 1 | 0: d/dt integral u^2 = -(uL - uR)^3 / 3 at the shock, so the
    // moment-zero mass grows at 1/6 per unit time. The fan at x = 0 dissipates nothing.
    const double uLR[] = {1.0, 0.0};
    const Field u0 = make_initial("riemann", uLR, 1, 2048);
    Field u = u0;
    sweep_1d(u, 0, ScalarFlux(burgers(1).A[0]), 0.1);
    KineticLedger l(XiGrid::covering(1.0, 512), 1);
    const double total = l.accumulate(u0, u, 0);
    EXPECT_GT(total, 0.0);
    EXPECT_NEAR(l.moment_pos(0), 0.1 / 6.0, 0.1 / 6.0 * 0.05);
}

TEST(Ledger, MomentsAndMerge) {
    std::mt19937_64 gen(7);
    const Field a = random_field(gen, 32);
    Field b = a;
    sweep_1d(b, 0, ScalarFlux(burgers(1).A[0]), 0.2);
    KineticLedger l1(XiGrid::covering(1.0, 40), 2, {0, 2});
    KineticLedger l2(XiGrid::covering(1.0, 40), 2, {0, 2});
    l1.accumulate(a, b, 0);
    l2.accumulate(a, b, 1);
    double m2 = 0.0;
    for (std::size_t bin = 0; bin < l1.bins(); ++bin) {
        EXPECT_GE(l1.mass_pos(0, bin), 0.0);
        EXPECT_EQ(l1.mass_neg(0, bin), 0.0);
        m2 += std::pow(std::abs(l1.grid().center(bin)), 2) * l1.mass_pos(0, bin);
    }
    EXPECT_NEAR(l1.moment_pos(2), m2, 1e-14);
    EXPECT_THROW(l1.moment_pos(1), std::invalid_argument);
    KineticLedger left = l1, right = l2;
    left.merge(l2);
    right.merge(l1);
    EXPECT_EQ(left.total_pos(), right.total_pos());
    EXPECT_NEAR(left.total_pos(), 2.0 * l1.total_pos(), 1e-15);
    EXPECT_THROW(left.merge(KineticLedger(XiGrid::covering(1.0, 20), 2)), std::invalid_argument);
}

TEST(Ledger, CsvHeader) {
    KineticLedger l(XiGrid::covering(1.0, 4), 2);
    std::stringstream ss;
    write_ledger_csv(l, ss);
    std::string header;
    std::getline(ss, header);
    EXPECT_EQ(header, "bucket,xi_center,mass_pos,mass_neg");
    int rows = 0;
    for (std::string line; std::getline(ss, line);) ++rows;
    EXPECT_EQ(rows, 8);
}

TEST(EnergyBalance, ConstantDataHasZeroDefect) {
    RecordOptions r;
    r.times = {0.5, 1.0};
    const auto rec = solve_deterministic(Field(32, 0.7), burgers(1), 1.0, r);
    EXPECT_EQ(energy_balance_defect(rec, 0), 0.0);
    EXPECT_EQ(rec.ledger.total_pos(), 0.0);
}

TEST(EnergyBalance, BurgersSineAndMassBound) {
    const double p[] = {1.0, 1.0};
    const Field u0 = make_initial("sine", p, 1, 512);
    RecordOptions r;
    r.times = {0.25, 0.5};
    r.xi_bins = 128;
    const auto rec = solve_deterministic(u0, burgers(1), 0.5, r);
    const double norm = u0.lp_power(2.0);
    EXPECT_LE(std::abs(energy_balance_defect(rec, 0)), 1e-2 * norm);
    EXPECT_LE(2.0 * rec.ledger.moment_pos(0), norm);
    EXPECT_THROW(energy_balance_defect(rec, 3), std::invalid_argument);
}
