#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "finite_gauss/geometry.hpp"
#include "finite_gauss/interval_map.hpp"

using Catch::Approx;
using fg::kPi;

TEST_CASE("polygon config constants") {
    auto c3 = fg::make_polygon_config(3);
    REQUIRE(c3.t_star == Approx(0.57735026918962576).margin(1e-16));
    // two branches, split exactly at 0 (Q^{-1}(inf) = 0)
    REQUIRE(c3.cut.size() == 3);
    REQUIRE(c3.cut[0] == c3.t_star);
    REQUIRE(c3.cut[1] == 0.0);
    REQUIRE(c3.cut[2] == -c3.t_star);

    auto c4 = fg::make_polygon_config(4);
    REQUIRE(c4.cut[1] == Approx(0.071067811865475244).margin(1e-16));
    REQUIRE(c4.cut[2] == Approx(-0.071067811865475244).margin(1e-16));
    REQUIRE(c4.branch_lo(2) == c4.cut[2]);
    REQUIRE(c4.branch_hi(2) == c4.cut[1]);

    REQUIRE_THROWS_AS(fg::make_polygon_config(2), std::domain_error);
    REQUIRE_THROWS_AS(fg::make_polygon_config(0), std::domain_error);
}

TEST_CASE("polygon config invariants") {
    for (int n = 3; n <= 12; ++n) {
        auto cfg = fg::make_polygon_config(n);
        REQUIRE(cfg.t_star > 0);
        REQUIRE(cfg.t_star < 1);
        for (int k = 1; k < n; ++k) {
            double r = cfg.a(k) * cfg.a(k) + cfg.b(k) * cfg.b(k);
            REQUIRE(r == Approx(1.0).margin(1e-14));
        }
        // cuts strictly decreasing from t* to -t*: disjoint branches covering the interval
        for (int j = 1; j < n; ++j) REQUIRE(cfg.cut[j] < cfg.cut[j - 1]);
        REQUIRE(cfg.cut.front() == cfg.t_star);
        REQUIRE(cfg.cut.back() == -cfg.t_star);
        REQUIRE(static_cast<int>(cfg.branch.size()) == n - 1);
    }
}

TEST_CASE("chart maps") {
    REQUIRE(fg::t_from_angle(0.0) == 0.0);
    REQUIRE(fg::t_from_angle(kPi / 4) ==
            Approx(fg::make_polygon_config(4).t_star).margin(1e-15));
    REQUIRE(fg::t_from_angle(kPi / 2) == Approx(1.0).margin(1e-15));
    REQUIRE_THROWS_AS(fg::t_from_angle(-kPi), std::domain_error);
    REQUIRE_THROWS_AS(fg::t_from_angle(kPi), std::domain_error);  // reduces to -pi

    REQUIRE(fg::angle_from_t(0.0) == 0.0);
    REQUIRE(fg::angle_from_t(1.0) == Approx(kPi / 2).margin(1e-15));
    REQUIRE(fg::angle_from_t(fg::make_polygon_config(3).t_star) ==
            Approx(kPi / 3).margin(1e-15));
}

TEST_CASE("chart round trip") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-kPi + 1e-6, kPi - 1e-6);
    for (int i = 0; i < 5000; ++i) {
        double phi = u(rng);
        REQUIRE(fg::angle_from_t(fg::t_from_angle(phi)) == Approx(phi).margin(1e-12));
    }
}

TEST_CASE("angle reduction is idempotent") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-50, 50);
    for (int i = 0; i < 2000; ++i) {
        double r = fg::reduce_angle(u(rng));
        REQUIRE(r >= -kPi);
        REQUIRE(r < kPi);
        REQUIRE(fg::reduce_angle(r) == r);
    }
}

TEST_CASE("tangency angles are fixed by the circle map") {
    for (int n = 3; n <= 12; ++n) {
        auto cfg = fg::make_polygon_config(n);
        for (int j = 1; j <= n; ++j) {
            double ang = fg::reduce_angle((2 * j - 1) * kPi / n);
            if (ang == -kPi) continue;  // measure the same point from the other side
            double out = fg::circle_map(ang, cfg);
            REQUIRE(std::abs(fg::reduce_angle(out - ang)) < 1e-12);
        }
    }
}

TEST_CASE("circle map stays on the unit circle") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int n = 3; n <= 12; ++n) {
        auto cfg = fg::make_polygon_config(n);
        for (int i = 0; i < 10000; ++i) {
            double phi = u(rng);
            int j = fg::nearest_vertex(phi, cfg);
            fg::Vec2 img = fg::chord_project(fg::circle_point(phi), fg::vertex_position(j, cfg));
            REQUIRE(std::abs(fg::norm(img) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("fundamental-arc image is Q(t)") {
    std::mt19937_64 rng(37);
    for (int n : {3, 5, 8}) {
        auto cfg = fg::make_polygon_config(n);
        std::uniform_real_distribution<double> u(0.01, cfg.t_star);
        for (int i = 0; i < 500; ++i) {
            double t = u(rng) * (i % 2 ? 1 : -1);
            double got = fg::circle_map(fg::angle_from_t(t), cfg);
            double want = fg::angle_from_t(cfg.t_star * cfg.t_star / t);
            REQUIRE(std::abs(fg::reduce_angle(got - want)) < 1e-11);
        }
    }
}

TEST_CASE("arc midpoint opposite a vertex maps to the antipode") {
    auto cfg = fg::make_polygon_config(4);
    REQUIRE(fg::circle_map(0.0, cfg) == -kPi);  // (0,1) -> (0,-1)
}

TEST_CASE("vertex arc membership and boundary convention") {
    auto cfg = fg::make_polygon_config(4);
    REQUIRE(fg::nearest_vertex(0.0, cfg) == 1);
    REQUIRE(fg::nearest_vertex(kPi / 2, cfg) == 2);
    REQUIRE(fg::nearest_vertex(-kPi / 2, cfg) == 4);
    // exact boundary goes to the preceding arc
    REQUIRE(fg::nearest_vertex(kPi / 4, cfg) == 1);
    REQUIRE(fg::nearest_vertex(3 * kPi / 4, cfg) == 2);
}

TEST_CASE("commuting square: interval pipeline vs circle map") {
    std::mt19937_64 rng(41);
    for (int n = 3; n <= 8; ++n) {
        auto cfg = fg::make_polygon_config(n);
        std::uniform_real_distribution<double> u(-0.999 * cfg.t_star, 0.999 * cfg.t_star);
        for (int i = 0; i < 2000; ++i) {
            double t = u(rng);
            if (std::abs(t) < 1e-8) continue;
            auto [ft, k] = fg::step_F(t, cfg);
            double lhs = fg::angle_from_t(ft);
            double rhs = fg::reduce_angle(fg::circle_map(fg::angle_from_t(t), cfg) -
                                          2 * kPi * k / n);
            REQUIRE(std::abs(fg::reduce_angle(lhs - rhs)) < 1e-10);
        }
    }
}
