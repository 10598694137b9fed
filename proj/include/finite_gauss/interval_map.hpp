#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "finite_gauss/geometry.hpp"
#include "finite_gauss/moebius.hpp"
#include "finite_gauss/rational.hpp"

namespace fg {

// s = Q(t) = t*^2 / t, the chord projection through P_1 in the centered chart.
inline Projective<double> q_map(Projective<double> t, const PolygonConfig& cfg) {
    const double ts2 = cfg.t_star * cfg.t_star;
    if (t.infinite) return Projective<double>(0.0);
    if (t.value == 0.0) return Projective<double>::inf();
    return Projective<double>(ts2 / t.value);
}

// Branch index k in {1,..,n-1} with t in [cut[k], cut[k-1]]. Interior cut
// points belong to the lower-k (right-hand) branch.
inline int branch_index(double t, const PolygonConfig& cfg) {
    if (t < -cfg.t_star || t > cfg.t_star)
        throw std::domain_error("branch_index: t outside [-t*, t*]");
    for (int k = 1; k < cfg.n - 1; ++k)
        if (t >= cfg.cut[k]) return k;
    return cfg.n - 1;
}

// One step of F = R_k o Q. The exact endpoints +-t* are the two tangency
// points; they are fixed on the circle, so they are treated as fixed here
// (the literal rotation convention would swap them).
inline std::pair<double, int> step_F(double t, const PolygonConfig& cfg) {
    if (t == cfg.t_star) return {cfg.t_star, 1};
    if (t == -cfg.t_star) return {-cfg.t_star, cfg.n - 1};
    int k = branch_index(t, cfg);
    double v = cfg.branch[k - 1](t);
    v = std::clamp(v, -cfg.t_star, cfg.t_star);
    return {v, k};
}

// F_k^{-1}(t): the unique preimage of t in branch k's domain.
inline double inverse_branch(double t, int k, const PolygonConfig& cfg) {
    if (k < 1 || k >= cfg.n) throw std::domain_error("inverse_branch: bad branch index");
    if (t < -cfg.t_star || t > cfg.t_star)
        throw std::domain_error("inverse_branch: t outside [-t*, t*]");
    double v = cfg.branch_inv[k - 1](t);
    return std::clamp(v, cfg.branch_lo(k), cfg.branch_hi(k));
}

struct OrbitRecord {
    std::vector<double> points;                // points.size() == symbols.size() + 1
    std::vector<int> symbols;
    std::optional<std::size_t> escaped_at;     // step where the orbit hit a branch boundary
};

inline constexpr double kBoundaryGuard = 1e-15;

// Iterates step_F, recording branch symbols. Stops (escaped_at) once a point
// is within 1e-15 of a branch boundary: the symbolic itinerary is numerically
// meaningless there. Exact tangency endpoints iterate as fixed points.
inline OrbitRecord encode_orbit(double t0, int steps, const PolygonConfig& cfg) {
    if (steps < 1) throw std::invalid_argument("encode_orbit: steps must be >= 1");
    OrbitRecord rec;
    rec.points.reserve(steps + 1);
    rec.symbols.reserve(steps);
    rec.points.push_back(t0);
    double t = t0;
    for (int i = 0; i < steps; ++i) {
        if (t != cfg.t_star && t != -cfg.t_star) {
            bool near_boundary = false;
            for (double c : cfg.cut)
                if (std::abs(t - c) <= kBoundaryGuard) { near_boundary = true; break; }
            if (near_boundary) {
                rec.escaped_at = static_cast<std::size_t>(i);
                break;
            }
        }
        auto [next, k] = step_F(t, cfg);
        rec.symbols.push_back(k);
        rec.points.push_back(next);
        t = next;
    }
    return rec;
}

// Endpoints of {t : first |word| symbols of t equal word}, as the image of the
// last symbol's branch domain under the composed inverse branches.
inline std::pair<double, double> cylinder_interval(const std::vector<int>& word,
                                                   const PolygonConfig& cfg) {
    if (word.empty()) throw std::invalid_argument("cylinder_interval: empty word");
    for (int k : word)
        if (k < 1 || k >= cfg.n) throw std::invalid_argument("cylinder_interval: bad symbol");
    int last = word.back();
    double lo = cfg.branch_lo(last), hi = cfg.branch_hi(last);
    for (std::size_t i = word.size() - 1; i-- > 0;) {
        double u = inverse_branch(lo, word[i], cfg);
        double v = inverse_branch(hi, word[i], cfg);
        lo = std::min(u, v);
        hi = std::max(u, v);
    }
    return {lo, hi};
}

// ---------------------------------------------------------------------------
// Oriented chart: tangency A_n at t = 0, fundamental arc = [0, tan(pi/n)].
// Conjugate to the centered chart by h(s) = (s + t*)/(1 - t* s), which is the
// half-arc rotation; no orientation flip is needed (regression-tested against
// the n=4 square-chart branches).
// ---------------------------------------------------------------------------

struct OrientedMap {
    int n = 0;
    double length = 0;                        // tan(pi/n)
    std::vector<double> cut;                  // cut[0] = length > cut[1] > ... > cut[n-1] = 0
    std::vector<Moebius<double>> branch;      // index k-1
    Moebius<double> h, h_inv;                 // centered <-> oriented conjugacy
    bool exact = false;                       // rational cuts/matrices (n == 4 only)
    std::vector<BigRational> cut_exact;
    std::vector<Moebius<BigRational>> branch_exact;
};

inline OrientedMap make_oriented(const PolygonConfig& cfg) {
    OrientedMap om;
    om.n = cfg.n;
    const double ts = cfg.t_star;
    om.h = Moebius<double>(1, ts, -ts, 1);
    om.h_inv = om.h.inverse();
    om.length = std::tan(kPi / cfg.n);
    om.cut.resize(cfg.n);
    om.cut[0] = om.length;
    om.cut[cfg.n - 1] = 0.0;
    for (int j = 1; j < cfg.n - 1; ++j) om.cut[j] = om.h(cfg.cut[j]);
    const double s = std::sin(kPi / cfg.n), c = std::cos(kPi / cfg.n);
    om.branch.reserve(cfg.n - 1);
    for (int k = 1; k < cfg.n; ++k) {
        double ak = cfg.a(k), bk = cfg.b(k);
        om.branch.emplace_back(ak * s - 2 * c * bk, s * bk, 2 * c * ak + s * bk, -s * ak);
    }
    if (cfg.n == 4) {
        // the square chart has integer branches and rational cuts {1, 1/2, 1/3, 0}
        om.exact = true;
        om.length = 1.0;
        om.cut = {1.0, 0.5, 1.0 / 3.0, 0.0};
        om.branch = {Moebius<double>(1, -1, -3, 1),    // (t-1)/(1-3t) on (1/2, 1]
                     Moebius<double>(-2, 1, 1, 0),     // 1/t - 2     on (1/3, 1/2]
                     Moebius<double>(3, -1, 1, -1)};   // (3t-1)/(t-1) on [0, 1/3]
        om.cut_exact = {make_rational(1, 1), make_rational(1, 2), make_rational(1, 3),
                        make_rational(0, 1)};
        om.branch_exact = {
            Moebius<BigRational>(BigRational(1), BigRational(-1), BigRational(-3), BigRational(1)),
            Moebius<BigRational>(BigRational(-2), BigRational(1), BigRational(1), BigRational(0)),
            Moebius<BigRational>(BigRational(3), BigRational(-1), BigRational(1), BigRational(-1))};
    }
    return om;
}

// Branch k lives on (cut[k], cut[k-1]]; cut points belong to the branch on
// their left (higher k), and 0 belongs to branch n-1.
inline int oriented_branch_index(double t, const OrientedMap& om) {
    if (t < 0.0 || t > om.length)
        throw std::domain_error("oriented_branch_index: t outside [0, tan(pi/n)]");
    for (int k = 1; k < om.n - 1; ++k)
        if (t > om.cut[k]) return k;
    return om.n - 1;
}

inline std::pair<double, int> oriented_step(double t, const OrientedMap& om) {
    int k = oriented_branch_index(t, om);
    double v = om.branch[k - 1](t);
    v = std::clamp(v, 0.0, om.length);
    return {v, k};
}

inline double oriented_map(double t, const OrientedMap& om) { return oriented_step(t, om).first; }

inline int oriented_branch_index_exact(const BigRational& t, const OrientedMap& om) {
    if (!om.exact) throw std::logic_error("oriented exact mode requires n == 4");
    if (t < 0 || t > om.cut_exact[0])
        throw std::domain_error("oriented_branch_index_exact: t outside [0, 1]");
    for (int k = 1; k < om.n - 1; ++k)
        if (t > om.cut_exact[k]) return k;
    return om.n - 1;
}

inline std::pair<BigRational, int> oriented_step_exact(const BigRational& t,
                                                       const OrientedMap& om) {
    int k = oriented_branch_index_exact(t, om);
    const auto& m = om.branch_exact[k - 1];
    return {(m.a * t + m.b) / (m.c * t + m.d), k};
}

// ---------------------------------------------------------------------------
// Generic-triangle family on [-1, 1]: two odd-symmetric Moebius branches.
// ---------------------------------------------------------------------------

struct TriangleParam {
    double a = 3;
};

// Rejects parameters whose branch pole lands inside the closed branch domain
// (works out to a <= 1; a == 2 has no finite pole).
inline TriangleParam make_triangle_param(double a) {
    if (!std::isfinite(a)) throw std::domain_error("make_triangle_param: non-finite parameter");
    if (a != 2.0) {
        double pole = 1.0 / (a - 2.0);   // pole of the left branch; right branch pole is -pole
        if (pole >= -1.0 && pole <= 0.0)
            throw std::domain_error("make_triangle_param: branch pole inside [-1, 0]");
        if (-pole >= 0.0 && -pole <= 1.0)
            throw std::domain_error("make_triangle_param: branch pole inside [0, 1]");
    }
    return TriangleParam{a};
}

// T_a; t = 0 goes to the left branch.
inline double triangle_map(double t, const TriangleParam& p) {
    if (t < -1.0 || t > 1.0) throw std::domain_error("triangle_map: t outside [-1, 1]");
    const double a = p.a;
    if (t <= 0.0) return (a * t + 1) / ((a - 2) * t - 1);
    return (a * t - 1) / (-(a - 2) * t - 1);
}

}  // namespace fg
