#include <doctest.h>

#include <numeric>
#include <random>

#include "generators.hpp"
#include "oracle.hpp"
#include "vfcm/error.hpp"
#include "vfcm/fcm.hpp"
#include "vfcm/vfc.hpp"

using namespace vfcm;

namespace {

DataMatrix points_1d(std::vector<double> v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return DataMatrix(std::move(m));
}

Centers centers_1d(std::vector<double> v) { return points_1d(std::move(v)).values(); }

oracle::Grid to_grid(const Matrix& m) {
    oracle::Grid g(m.rows(), std::vector<double>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) g[i][k] = m(i, k);
    return g;
}

}  // namespace

TEST_CASE("fcm_update_memberships examples") {
    SUBCASE("single cluster is always full membership") {
        const auto u = fcm_update_memberships(points_1d({1, 2, 3}), centers_1d({7}), 2.0);
        for (std::size_t i = 0; i < 3; ++i) CHECK(u(i, 0) == 1.0);
    }
    SUBCASE("point on a center is crisp") {
        const auto u = fcm_update_memberships(points_1d({3}), centers_1d({1, 3}), 2.0);
        CHECK(u(0, 0) == 0.0);
        CHECK(u(0, 1) == 1.0);
    }
    SUBCASE("coincident centers tie-break to the lowest index") {
        const auto u = fcm_update_memberships(points_1d({3}), centers_1d({3, 3}), 2.0);
        CHECK(u(0, 0) == 1.0);
        CHECK(u(0, 1) == 0.0);
    }
    SUBCASE("x=0, centers {1,3}, m=2 gives (0.9, 0.1)") {
        const auto u = fcm_update_memberships(points_1d({0}), centers_1d({1, 3}), 2.0);
        CHECK(u(0, 0) == doctest::Approx(0.9).epsilon(1e-15));
        CHECK(u(0, 1) == doctest::Approx(0.1).epsilon(1e-14));
    }
}

TEST_CASE("fcm_update_centers examples") {
    SUBCASE("equal memberships give the mean") {
        Matrix x(3, 2);
        x(0, 0) = 1; x(1, 0) = 2; x(2, 0) = 6;
        x(0, 1) = -1; x(1, 1) = 0; x(2, 1) = 4;
        MembershipMatrix u(3, 2, 0.5);
        const auto v = fcm_update_centers(DataMatrix(x), u, 2.5);
        CHECK(v(0, 0) == doctest::Approx(3.0));
        CHECK(v(1, 1) == doctest::Approx(1.0));
    }
    SUBCASE("single supporting point") {
        MembershipMatrix u(2, 1);
        u(0, 0) = 1;
        const auto v = fcm_update_centers(points_1d({0, 1}), u, 2.0);
        CHECK(v(0, 0) == 0.0);
    }
    SUBCASE("weighted by u^m") {
        MembershipMatrix u(2, 1);
        u(0, 0) = 0.9;
        u(1, 0) = 0.1;
        const auto v = fcm_update_centers(points_1d({0, 1}), u, 2.0);
        CHECK(v(0, 0) == doctest::Approx(0.012195121951219513).epsilon(1e-14));
    }
    SUBCASE("empty cluster is an error") {
        MembershipMatrix u(2, 2);
        u(0, 0) = 1;
        u(1, 0) = 1;
        try {
            fcm_update_centers(points_1d({0, 1}), u, 2.0);
            FAIL("expected throw");
        } catch (const EmptyClusterError& e) {
            CHECK(e.cluster() == 1);
            CHECK_FALSE(e.dimension().has_value());
        }
    }
}

TEST_CASE("fcm_objective examples") {
    MembershipMatrix full(1, 1, 1.0);
    CHECK(fcm_objective(points_1d({2}), centers_1d({2}), full, 3.0) == 0.0);
    CHECK(fcm_objective(points_1d({2}), centers_1d({0}), full, 3.0) == 4.0);
    MembershipMatrix half(1, 1, 0.5);
    CHECK(fcm_objective(points_1d({2}), centers_1d({0}), half, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("fcm updates agree with the printed formulas on random instances") {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 300; ++t) {
        const auto inst = gen::random_instance(rng);
        const auto u = fcm_update_memberships(inst.data, inst.centers, inst.m);
        const auto ou = oracle::memberships(to_grid(inst.data.values()), to_grid(inst.centers), inst.m);
        for (std::size_t i = 0; i < u.rows(); ++i)
            for (std::size_t j = 0; j < u.cols(); ++j) CHECK(u(i, j) == doctest::Approx(ou[i][j]).epsilon(1e-10));

        const auto v = fcm_update_centers(inst.data, u, inst.m);
        const auto ov = oracle::centers(to_grid(inst.data.values()), ou, inst.m);
        for (std::size_t j = 0; j < v.rows(); ++j)
            for (std::size_t k = 0; k < v.cols(); ++k) CHECK(v(j, k) == doctest::Approx(ov[j][k]).epsilon(1e-9));

        CHECK(fcm_objective(inst.data, v, u, inst.m) ==
              doctest::Approx(oracle::objective(to_grid(inst.data.values()), ov, ou, inst.m)).epsilon(1e-9));
    }
}

TEST_CASE("fcm_fit: two separated 1-D blobs match the fixed-point oracle") {
    const auto data = points_1d({0, 0.1, 10, 10.1});
    FitConfig cfg;
    cfg.clusters = 2;
    cfg.max_iters = 200;
    const auto start = centers_1d({0.0, 10.1});
    const auto fit = fcm_fit(data, cfg, start);

    const auto expected = oracle::fixed_point(to_grid(data.values()), to_grid(start), 2.0, 200);
    const double lo = std::min(fit.centers(0, 0), fit.centers(1, 0));
    const double hi = std::max(fit.centers(0, 0), fit.centers(1, 0));
    const double olo = std::min(expected[0][0], expected[1][0]);
    const double ohi = std::max(expected[0][0], expected[1][0]);
    CHECK(lo == doctest::Approx(olo).epsilon(1e-9));
    CHECK(hi == doctest::Approx(ohi).epsilon(1e-9));
    CHECK(lo == doctest::Approx(0.05).epsilon(0.01));
    CHECK(hi == doctest::Approx(10.05).epsilon(0.001));
}

TEST_CASE("fcm_fit: symmetric blobs make the scatter init coincide, which is a fixed point") {
    const auto data = points_1d({0, 0.1, 10, 10.1});
    const auto init = init_centers_scatter(data, 2);
    CHECK(init.centers(0, 0) == doctest::Approx(5.05));
    CHECK(init.centers(1, 0) == doctest::Approx(5.05));
    FitConfig cfg;
    cfg.clusters = 2;
    const auto fit = fcm_fit(data, cfg);
    CHECK(fit.centers(0, 0) == doctest::Approx(fit.centers(1, 0)));
}

TEST_CASE("fcm_fit: one cluster converges to the mean immediately") {
    Matrix x(4, 2);
    const double vals[] = {1, 2, 3, 8, -1, 0, 5, 4};
    std::copy(std::begin(vals), std::end(vals), x.flat().begin());
    FitConfig cfg;
    cfg.clusters = 1;
    cfg.max_iters = 5;
    const auto fit = fcm_fit(DataMatrix(x), cfg);
    CHECK(fit.centers(0, 0) == doctest::Approx(2.0));
    CHECK(fit.centers(0, 1) == doctest::Approx(3.5));
    REQUIRE(fit.objective_trace.size() == 5);
    for (double j : fit.objective_trace) CHECK(j == doctest::Approx(fit.objective_trace.front()));
}

TEST_CASE("fcm_fit: max_iters = 1 runs exactly one update pair") {
    std::mt19937_64 rng(5);
    const auto inst = gen::random_instance(rng);
    FitConfig cfg;
    cfg.clusters = inst.centers.rows();
    cfg.fuzziness = inst.m;
    cfg.max_iters = 1;
    const auto fit = fcm_fit(inst.data, cfg, inst.centers);
    CHECK(fit.iterations_run == 1);
    CHECK(fit.objective_trace.size() == 1);
    CHECK(fit.converged_by == StopReason::max_iters);
    CHECK(fit.config.init == InitMethod::given_centers);
    const auto u0 = fcm_update_memberships(inst.data, inst.centers, inst.m);
    const auto v1 = fcm_update_centers(inst.data, u0, inst.m);
    CHECK(fit.centers == v1);
    CHECK(fit.objective_trace[0] == fcm_objective(inst.data, inst.centers, u0, inst.m));
}

TEST_CASE("fcm_fit: epsilon criterion stops early") {
    const auto data = points_1d({0, 0.1, 0.2, 10, 10.1, 10.2});
    FitConfig cfg;
    cfg.clusters = 2;
    cfg.max_iters = 500;
    cfg.epsilon = 1e-6;
    const auto fit = fcm_fit(data, cfg);
    CHECK(fit.converged_by == StopReason::epsilon);
    CHECK(fit.iterations_run < 500);
    CHECK(fit.objective_trace.size() == fit.iterations_run);
}

TEST_CASE("fcm_fit rejects invalid configs") {
    const auto data = points_1d({0, 1, 2});
    FitConfig cfg;
    cfg.clusters = 4;
    CHECK_THROWS_AS(fcm_fit(data, cfg), InvalidArgument);
    cfg.clusters = 2;
    cfg.fuzziness = 1.0;
    CHECK_THROWS_AS(fcm_fit(data, cfg), InvalidArgument);
    cfg.fuzziness = 2.0;
    cfg.max_iters = 0;
    CHECK_THROWS_AS(fcm_fit(data, cfg), InvalidArgument);
    cfg.max_iters = 10;
    cfg.epsilon = 1.5;
    CHECK_THROWS_AS(fcm_fit(data, cfg), InvalidArgument);
    cfg.epsilon = 0;
    cfg.init = InitMethod::given_centers;
    CHECK_THROWS_AS(fcm_fit(data, cfg), InvalidArgument);
    cfg.init = InitMethod::scatter;
    CHECK_THROWS_AS(fcm_fit(data, cfg, Centers(3, 1)), InvalidArgument);
}

TEST_CASE("fcm_fit properties on random instances") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 200; ++t) {
        const auto inst = gen::random_instance(rng);
        const std::size_t c = inst.centers.rows();
        FitConfig cfg;
        cfg.clusters = c;
        cfg.fuzziness = inst.m;
        cfg.max_iters = 30;
        const auto fit = fcm_fit(inst.data, cfg, inst.centers);

        // Rows sum to one, trace is monotone.
        for (std::size_t i = 0; i < fit.memberships.rows(); ++i) {
            const auto row = fit.memberships.row(i);
            CHECK(std::abs(std::accumulate(row.begin(), row.end(), 0.0) - 1.0) <= 1e-12);
        }
        for (std::size_t g = 1; g < fit.objective_trace.size(); ++g) {
            CHECK(fit.objective_trace[g] <= fit.objective_trace[g - 1] * (1 + 1e-9) + 1e-300);
        }

        // Reversing cluster order reverses the output.
        Centers reversed(c, inst.centers.cols());
        for (std::size_t j = 0; j < c; ++j)
            for (std::size_t k = 0; k < reversed.cols(); ++k) reversed(j, k) = inst.centers(c - 1 - j, k);
        const auto rfit = fcm_fit(inst.data, cfg, reversed);
        for (std::size_t j = 0; j < c; ++j) {
            for (std::size_t k = 0; k < reversed.cols(); ++k)
                CHECK(rfit.centers(c - 1 - j, k) == doctest::Approx(fit.centers(j, k)).epsilon(1e-9));
            for (std::size_t i = 0; i < inst.data.rows(); ++i)
                CHECK(std::abs(rfit.memberships(i, c - 1 - j) - fit.memberships(i, j)) <= 1e-9);
        }

        // Translating every point shifts the centers and leaves memberships alone.
        Matrix shifted = inst.data.values();
        Centers shifted_start = inst.centers;
        for (std::size_t k = 0; k < shifted.cols(); ++k) {
            const double offset = 3.0 + static_cast<double>(k);
            for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, k) += offset;
            for (std::size_t j = 0; j < c; ++j) shifted_start(j, k) += offset;
        }
        const auto sfit = fcm_fit(DataMatrix(shifted), cfg, shifted_start);
        for (std::size_t j = 0; j < c; ++j)
            for (std::size_t k = 0; k < shifted.cols(); ++k)
                CHECK(std::abs(sfit.centers(j, k) - fit.centers(j, k) - (3.0 + static_cast<double>(k))) <= 1e-9);
        for (std::size_t t2 = 0; t2 < fit.memberships.flat().size(); ++t2)
            CHECK(std::abs(sfit.memberships.flat()[t2] - fit.memberships.flat()[t2]) <= 1e-9);
    }
}
