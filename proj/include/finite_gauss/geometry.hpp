#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "finite_gauss/moebius.hpp"

namespace fg {

inline constexpr double kPi = std::numbers::pi;

struct Vec2 {
    double x = 0, y = 0;
};

inline double dot(Vec2 u, Vec2 v) { return u.x * v.x + u.y * v.y; }
inline Vec2 operator+(Vec2 u, Vec2 v) { return {u.x + v.x, u.y + v.y}; }
inline Vec2 operator-(Vec2 u, Vec2 v) { return {u.x - v.x, u.y - v.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double norm(Vec2 v) { return std::sqrt(dot(v, v)); }

// Angles are measured from the chart's north pole (0,1); the circle point of
// angle phi is (sin phi, cos phi), so t = tan(phi/2) is the stereographic
// coordinate. Reduced range is [-pi, pi).
inline double reduce_angle(double phi) {
    double r = std::fmod(phi + kPi, 2 * kPi);
    if (r < 0) r += 2 * kPi;
    return r - kPi;
}

inline Vec2 circle_point(double phi) { return {std::sin(phi), std::cos(phi)}; }

// All n-dependent constants of the circumscribed regular n-gon with the
// vertex P_1 on the chart's north radial. Immutable after construction.
struct PolygonConfig {
    int n = 0;
    double t_star = 0;             // tan(pi/2n), coordinate of tangency A_1
    std::vector<double> rot_cos;   // cos(pi k/n), k = 1..n-1
    std::vector<double> rot_sin;   // sin(pi k/n)
    std::vector<double> cut;       // cut[j] = c_{j+1} = t*^2 cot(pi(2j+1)/2n), j = 0..n-1
                                   // branch k lives on [cut[k], cut[k-1]]; cut[0] = t*, cut[n-1] = -t*
    std::vector<Moebius<double>> branch;      // F_k, index k-1
    std::vector<Moebius<double>> branch_inv;  // F_k^{-1}

    double a(int k) const { return rot_cos[k - 1]; }
    double b(int k) const { return rot_sin[k - 1]; }
    double branch_lo(int k) const { return cut[k]; }
    double branch_hi(int k) const { return cut[k - 1]; }
};

inline PolygonConfig make_polygon_config(int n) {
    if (n < 3) throw std::domain_error("make_polygon_config: n must be >= 3");
    PolygonConfig cfg;
    cfg.n = n;
    cfg.t_star = std::tan(kPi / (2 * n));
    const double ts2 = cfg.t_star * cfg.t_star;
    cfg.rot_cos.resize(n - 1);
    cfg.rot_sin.resize(n - 1);
    for (int k = 1; k < n; ++k) {
        if (2 * k == n) {  // cos(pi/2) exactly
            cfg.rot_cos[k - 1] = 0.0;
            cfg.rot_sin[k - 1] = 1.0;
        } else {
            cfg.rot_cos[k - 1] = std::cos(kPi * k / n);
            cfg.rot_sin[k - 1] = std::sin(kPi * k / n);
        }
    }
    cfg.cut.resize(n);
    cfg.cut[0] = cfg.t_star;
    cfg.cut[n - 1] = -cfg.t_star;
    for (int j = 1; j < n - 1; ++j) {
        int m = 2 * j + 1;  // boundary angle pi*m/2n
        if (m == n) {
            cfg.cut[j] = 0.0;  // Q^{-1}(inf)
        } else {
            double th = kPi * m / (2 * n);
            cfg.cut[j] = ts2 * std::cos(th) / std::sin(th);
        }
    }
    cfg.branch.reserve(n - 1);
    cfg.branch_inv.reserve(n - 1);
    for (int k = 1; k < n; ++k) {
        double ak = cfg.rot_cos[k - 1], bk = cfg.rot_sin[k - 1];
        Moebius<double> Fk(-bk, ak * ts2, ak, bk * ts2);
        cfg.branch.push_back(Fk);
        cfg.branch_inv.push_back(Fk.inverse());
    }
    return cfg;
}

// Stereographic coordinate of the circle point of angle phi (south pole
// excluded: the chart does not cover phi = -pi).
inline double t_from_angle(double phi) {
    phi = reduce_angle(phi);
    if (phi == -kPi) throw std::domain_error("t_from_angle: chart singularity at phi = -pi");
    return std::tan(phi / 2);
}

inline double angle_from_t(double t) { return 2 * std::atan(t); }

// 1-based index of the polygon vertex whose arc contains the angle phi.
// Exact arc-boundary hits go to the lower-index arc.
inline int nearest_vertex(double phi, const PolygonConfig& cfg) {
    double x = reduce_angle(phi) / (2 * kPi / cfg.n);
    int j = static_cast<int>(std::ceil(x - 0.5));  // half-ties round down
    j %= cfg.n;
    if (j < 0) j += cfg.n;
    return j + 1;
}

inline Vec2 vertex_position(int j, const PolygonConfig& cfg) {
    double alpha = 2 * kPi * (j - 1) / cfg.n;
    double r = 1.0 / std::cos(kPi / cfg.n);
    return {r * std::sin(alpha), r * std::cos(alpha)};
}

// Second intersection of the line through p (outside the circle) and the unit
// circle point z. Tangent lines return z itself.
inline Vec2 chord_project(Vec2 z, Vec2 p) {
    Vec2 w = z - p;
    double den = dot(w, w);
    double tau = 2 * dot(z, p - z) / den;
    return z + tau * (z - p);
}

// The chord-projection circle map: project z through its arc's vertex.
inline double circle_map(double phi, const PolygonConfig& cfg) {
    phi = reduce_angle(phi);
    int j = nearest_vertex(phi, cfg);
    Vec2 image = chord_project(circle_point(phi), vertex_position(j, cfg));
    return reduce_angle(std::atan2(image.x, image.y));
}

}  // namespace fg
