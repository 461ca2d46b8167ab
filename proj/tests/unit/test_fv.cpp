#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "sscl/error.hpp"
#include "sscl/field.hpp"
#include "sscl/flux.hpp"
#include "sscl/fv.hpp"
#include "sscl/initial_data.hpp"

using namespace sscl;

namespace {

// Exact periodic Burgers solution from Riemann 1/0 data split at 1/2, valid while the
// fan at x = 0 and the shock from x = 1/2 do not interact.
double periodic_riemann(double x, double t) {
    if (x < 0.3) return exact_riemann_burgers(0.0, 1.0, x, t);
    return exact_riemann_burgers(1.0, 0.0, x - 0.5, t);
}

Field exact_cell_averages(std::size_t n, double t) {
    Field f(n);
    const int sub = 256;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = 0; k < sub; ++k) s += periodic_riemann((i + (k + 0.5) / sub) / static_cast<double>(n), t);
        f[i] = s / sub;
    }
    return f;
}

Field random_field(std::mt19937_64& g, std::size_t nx, std::size_t ny = 0) {
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    Field f = ny == 0 ? Field(nx) : Field(nx, ny);
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = d(g);
    return f;
}

double tv1d(const Field& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.nx(); ++i) s += std::abs(f[(i + 1) % f.nx()] - f[i]);
    return s;
}

}  // namespace

TEST(NumericalFlux, GodunovExamples) {
    const ScalarFlux A(burgers(1).A[0]);
    EXPECT_DOUBLE_EQ(godunov_flux(A, 0.0, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(godunov_flux(A, 1.0, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(godunov_flux(A, -1.0, 1.0), 0.0);
    for (double c : {-2.0, -0.3, 0.0, 0.8}) EXPECT_DOUBLE_EQ(godunov_flux(A, c, c), c * c);
}

TEST(NumericalFlux, GodunovMatchesBruteForceExtremum) {
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Polynomial P({d(g), d(g), d(g), d(g), d(g)});
        const ScalarFlux A(P);
        const double ul = d(g), ur = d(g);
        double ext = ul <= ur ? INFINITY : -INFINITY;
        const double lo = std::min(ul, ur), hi = std::max(ul, ur);
        for (int k = 0; k <= 20000; ++k) {
            const double v = P(lo + (hi - lo) * k / 20000.0);
            ext = ul <= ur ? std::min(ext, v) : std::max(ext, v);
        }
        EXPECT_NEAR(godunov_flux(A, ul, ur), ext, 1e-6 * (1.0 + std::abs(ext)));
    }
}

TEST(NumericalFlux, EngquistOsherIsConsistentAndMonotone) {
    std::mt19937_64 g(4);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        const ScalarFlux A(Polynomial({d(g), d(g), d(g), d(g)}));
        const double c = d(g);
        EXPECT_NEAR(engquist_osher_flux(A, c, c), A.flux(c), 1e-12);
        const double ul = d(g), ur = d(g), du = 1e-3;
        EXPECT_GE(engquist_osher_flux(A, ul + du, ur), engquist_osher_flux(A, ul, ur) - 1e-12);
        EXPECT_LE(engquist_osher_flux(A, ul, ur + du), engquist_osher_flux(A, ul, ur) + 1e-12);
    }
}

TEST(ExactRiemann, Examples) {
    EXPECT_DOUBLE_EQ(exact_riemann_burgers(1.0, 0.0, 0.5, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(exact_riemann_burgers(1.0, 0.0, 1.5, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(exact_riemann_burgers(0.0, 1.0, 1.0, 1.0), 0.5);
    EXPECT_DOUBLE_EQ(exact_riemann_burgers(0.7, 0.7, -3.0, 2.0), 0.7);
    EXPECT_THROW(exact_riemann_burgers(1.0, 0.0, 0.0, 0.0), std::invalid_argument);
}

TEST(Sweep, ConstantFieldIsInvariant) {
    Field u(64, 0.4);
    const double c[] = {-0.5, 0.0, 0.2, 0.4, 0.9};
    auto [v, s] = sweep_1d(u, 0, ScalarFlux(burgers(1).A[0]), 1.0, 0.3, 0.45, c);
    for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ(v[i], 0.4);
    for (double m : s.per_bin) EXPECT_EQ(m, 0.0);
}

TEST(Sweep, ZeroPseudoTimeIsIdentity) {
    std::mt19937_64 g(1);
    const Field u = random_field(g, 32);
    auto [v, s] = sweep_1d(u, 0, ScalarFlux(burgers(1).A[0]), 1.0, 0.0, 0.45);
    for (std::size_t i = 0; i < 32; ++i) EXPECT_EQ(v[i], u[i]);
}

TEST(Sweep, RiemannProblemMatchesExactSolution) {
    const double uLR[] = {1.0, 0.0};
    Field u = make_initial("riemann", uLR, 1, 1024);
    sweep_1d(u, 0, ScalarFlux(burgers(1).A[0]), 0.1);
    EXPECT_LE(l1_distance(u, exact_cell_averages(1024, 0.1)), 5e-3);
}

TEST(Sweep, NegativeSignReversesTransport) {
    // Under -A the shock travels left: u stays 0 to the right of x = 1/2.
    const double uLR[] = {1.0, 0.0};
    const Field u = make_initial("riemann", uLR, 1, 256);
    auto [v, s] = sweep_1d(u, 0, ScalarFlux(burgers(1).A[0]), -1.0, 0.1, 0.45);
    EXPECT_NEAR(v.at(200), 0.0, 1e-12);
    EXPECT_NEAR(v.mean(), u.mean(), 1e-14);
}

TEST(Sweep, NonFiniteInputRaises) {
    Field u(16, 0.0);
    u[3] = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(sweep_1d(u, 0, ScalarFlux(burgers(1).A[0]), 0.1), NumericalFailure);
}

TEST(Sweep, StructuralProperties) {
    std::mt19937_64 g(11);
    std::uniform_real_distribution<double> pt(0.0, 0.3);
    const FluxSpec fluxes[] = {burgers(1), power_law(2), power_law(3), custom_poly({{0.0, 0.3, -0.5, 0.0, 0.25}})};
    for (int trial = 0; trial < 100; ++trial) {
        const ScalarFlux A(fluxes[trial % 4].A[0], trial % 3 == 0 ? -1.0 : 1.0);
        Field u = random_field(g, 64);
        Field w = random_field(g, 64);
        const double m0 = u.mean(), lo = u.min(), hi = u.max(), tv0 = tv1d(u), d0 = l1_distance(u, w);
        const double l2 = u.lp(2.0);
        SweepOptions opt;
        opt.scheme = trial % 2 == 0 ? NumericalFlux::godunov : NumericalFlux::engquist_osher;
        const double s = pt(g);
        sweep_1d(u, 0, A, s, opt);
        sweep_1d(w, 0, A, s, opt);
        EXPECT_NEAR(u.mean(), m0, 1e-13);
        EXPECT_GE(u.min(), lo - 1e-13);
        EXPECT_LE(u.max(), hi + 1e-13);
        EXPECT_LE(tv1d(u), tv0 + 1e-12);
        EXPECT_LE(u.lp(2.0), l2 + 1e-13);
        EXPECT_LE(l1_distance(u, w), d0 + 1e-13);
    }
}

TEST(Strang, ZeroIncrementIsIdentity) {
    std::mt19937_64 g(2);
    const Field u = random_field(g, 16, 16);
    const double db[] = {0.0, 0.0};
    auto [v, s] = strang_split_2d(u, diagonal_power(1), db, 0.45);
    for (std::size_t k = 0; k < u.size(); ++k) EXPECT_EQ(v[k], u[k]);
}

TEST(Strang, RowIndependentDataReducesToOneDimensionalSweep) {
    std::mt19937_64 g(5);
    const Field row = random_field(g, 32);
    Field u(32, std::size_t{8});
    for (std::size_t j = 0; j < 8; ++j)
        for (std::size_t i = 0; i < 32; ++i) u.at(i, j) = row[i];
    const double db[] = {0.17, 0.0};
    auto [v, s] = strang_split_2d(u, diagonal_power(1), db, 0.45);
    Field r = row;
    ScalarFlux A(diagonal_power(1).A[0]);
    sweep_1d(r, 0, A, 0.085);
    sweep_1d(r, 0, A, 0.085);
    for (std::size_t j = 0; j < 8; ++j)
        for (std::size_t i = 0; i < 32; ++i) EXPECT_NEAR(v.at(i, j), r[i], 1e-14);
}

TEST(Strang, ConservesMean) {
    std::mt19937_64 g(6);
    std::normal_distribution<double> n(0.0, 0.3);
    for (int trial = 0; trial < 20; ++trial) {
        const Field u = random_field(g, 32, 32);
        const double db[] = {n(g), n(g)};
        auto [v, s] = strang_split_2d(u, diagonal_power(1 + trial % 2), db, 0.45);
        EXPECT_LE(std::abs(v.mean() - u.mean()), 1e-12);
        EXPECT_LE(v.max(), u.max() + 1e-13);
        EXPECT_GE(v.min(), u.min() - 1e-13);
    }
}

TEST(Strang, L1Contraction2d) {
    std::mt19937_64 g(7);
    for (int trial = 0; trial < 10; ++trial) {
        Field u = random_field(g, 24, 24);
        Field w = random_field(g, 24, 24);
        const double d0 = l1_distance(u, w);
        const double db[] = {0.2, -0.15};
        strang_split_2d(u, diagonal_power(1), db);
        strang_split_2d(w, diagonal_power(1), db);
        EXPECT_LE(l1_distance(u, w), d0 + 1e-13);
    }
}

TEST(Field, NormsOfKnownData) {
    Field f(4);
    f[0] = 1.0;
    f[1] = -1.0;
    f[2] = 3.0;
    f[3] = 1.0;
    EXPECT_DOUBLE_EQ(f.mean(), 1.0);
    EXPECT_DOUBLE_EQ(f.l1(), 1.5);
    EXPECT_DOUBLE_EQ(f.linf(), 3.0);
    EXPECT_DOUBLE_EQ(f.l1_to(1.0), 1.0);
    EXPECT_DOUBLE_EQ(f.lp_power(2.0), 3.0);
    EXPECT_DOUBLE_EQ(f.bv(), 2.0 + 4.0 + 2.0 + 0.0);
}

TEST(Field, CsvRoundTrip) {
    std::mt19937_64 g(8);
    for (const Field& f : {random_field(g, 8), random_field(g, 4, 3)}) {
        std::stringstream ss;
        write_field_csv(f, ss);
        const Field h = read_field_csv(ss);
        ASSERT_TRUE(h.same_shape(f));
        for (std::size_t k = 0; k < f.size(); ++k) EXPECT_EQ(h[k], f[k]);
    }
}

TEST(InitialData, ExactCellAverages) {
    const double p[] = {2.0, 3.0};
    const Field s = make_initial("sine", p, 1, 16);
    for (std::size_t i = 0; i < 16; ++i) {
        const double a = i / 16.0, b = (i + 1) / 16.0, w = 2.0 * M_PI * 3.0;
        EXPECT_NEAR(s[i], 2.0 * (std::cos(w * a) - std::cos(w * b)) / (w / 16.0), 1e-12);
    }
    const double c[] = {0.25};
    EXPECT_EQ(make_initial("constant", c, 2, 8).max(), 0.25);
    const double rf[] = {4.0, 9.0, 0.5};
    EXPECT_NEAR(make_initial("random_fourier", rf, 1, 64).linf(), 0.5, 1e-12);
    EXPECT_THROW(make_initial("bogus", {}, 1, 8), std::invalid_argument);
}
