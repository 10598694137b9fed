#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "finite_gauss/geometry.hpp"
#include "finite_gauss/interval_map.hpp"
#include "finite_gauss/moebius.hpp"
#include "finite_gauss/rational.hpp"

namespace fg {

struct PeriodicPointReport {
    std::vector<int> word;
    double point = 0;
    Moebius<double> matrix;                              // composed forward branches along word
    std::optional<std::array<long long, 3>> min_poly;    // A t^2 + B t + C (A may be 0), exact mode
    int circle_period = 0;
};

struct CirclePeriodReport {
    int detected = 0;
    int gcd_formula = 0;       // gcd(k, n)
    int quotient_formula = 0;  // n / gcd(k, n)
    bool matches_gcd = false;
    bool matches_quotient = false;
};

namespace detail {

// Periodic circle orbits here are rigid-rotation orbits, but numerically they
// are strongly repelling (per-cycle multiplier up to |F'|^n ~ 1e21), so naive
// long iteration drowns any fixed return tolerance in amplified noise. The
// detection instead measures the rotation angle over one interval period,
// where the noise is only one multiplier's worth, and finds the least multiple
// of it that closes mod 2 pi. Extended precision keeps the measured angle well
// inside the 1e-9 window.
inline constexpr long double kPiL = std::numbers::pi_v<long double>;

inline long double reduce_angle_l(long double phi) {
    long double r = std::fmod(phi + kPiL, 2 * kPiL);
    if (r < 0) r += 2 * kPiL;
    return r - kPiL;
}

inline long double circle_map_l(long double phi, int n) {
    long double x = reduce_angle_l(phi) / (2 * kPiL / n);
    long long j = static_cast<long long>(std::ceil(x - 0.5L));
    long double alpha = 2 * kPiL * j / n;
    long double r = 1.0L / std::cos(kPiL / n);
    long double px = r * std::sin(alpha), py = r * std::cos(alpha);
    long double zx = std::sin(phi), zy = std::cos(phi);
    long double wx = zx - px, wy = zy - py;
    long double tau = 2 * (zx * (px - zx) + zy * (py - zy)) / (wx * wx + wy * wy);
    return reduce_angle_l(std::atan2(zx + tau * (zx - px), zy + tau * (zy - py)));
}

// Minimal circle period of a point whose interval orbit has period m_interval.
// Early returns (shorter than the interval period) happen when chart endpoints
// alias distinct fixed tangency points; they are checked directly.
inline int circle_return_time(long double phi0, int n, int m_interval) {
    long double phi = phi0;
    for (int i = 1; i <= m_interval; ++i) {
        phi = circle_map_l(phi, n);
        if (i < m_interval && std::abs(reduce_angle_l(phi - phi0)) < 1e-9L) return i;
    }
    long double omega = reduce_angle_l(phi - phi0);
    for (int j = 1; j <= n; ++j)
        if (std::abs(reduce_angle_l(j * omega)) < 1e-9L) return m_interval * j;
    throw std::logic_error("circle_return_time: no rotation multiple closes within 1e-9");
}

// Fixed point of branch k refined in extended precision.
inline long double branch_fixed_point_l(int k, int n, double seed) {
    long double a = std::cos(kPiL * k / n), b = std::sin(kPiL * k / n);
    long double ts = std::tan(kPiL / (2 * n));
    // a t^2 + b (1 + ts^2) t - a ts^2 = 0
    long double A = a, B = b * (1 + ts * ts), C = -a * ts * ts;
    if (A == 0.0L) return 0.0L;
    long double disc = B * B - 4 * A * C;
    long double s = std::sqrt(disc);
    long double r1 = (-B + s) / (2 * A), r2 = (-B - s) / (2 * A);
    return std::abs(r1 - (long double)seed) < std::abs(r2 - (long double)seed) ? r1 : r2;
}

// Fixed point of branch k inside its own domain. Throws if the quadratic does
// not have exactly one root there.
inline double branch_fixed_point(int k, const PolygonConfig& cfg) {
    auto fp = fixed_points(cfg.branch[k - 1]);
    const double lo = cfg.branch_lo(k), hi = cfg.branch_hi(k);
    const double slack = 1e-12;
    double found = 0;
    int in_domain = 0;
    for (int i = 0; i < fp.count; ++i) {
        if (fp.points[i].infinite) continue;
        double v = fp.points[i].value;
        if (v >= lo - slack && v <= hi + slack) {
            found = v;
            ++in_domain;
        }
    }
    if (in_domain != 1)
        throw std::logic_error("branch_fixed_point: expected exactly one root in the branch domain");
    return found;
}

}  // namespace detail

inline CirclePeriodReport circle_period_report(int k, const PolygonConfig& cfg) {
    if (k < 1 || k >= cfg.n) throw std::domain_error("circle_period_report: bad branch index");
    CirclePeriodReport r;
    long double sk = detail::branch_fixed_point_l(k, cfg.n, detail::branch_fixed_point(k, cfg));
    long double phi0 = 2 * std::atan(sk);
    // the one-step image must be the rotation by 2 pi k / n
    long double omega = detail::reduce_angle_l(detail::circle_map_l(phi0, cfg.n) - phi0);
    long double want = detail::reduce_angle_l(2 * detail::kPiL * k / cfg.n);
    if (std::abs(detail::reduce_angle_l(omega - want)) > 1e-9L)
        throw std::logic_error("circle_period_report: fixed point does not rotate by 2 pi k/n");
    r.detected = detail::circle_return_time(phi0, cfg.n, 1);
    r.gcd_formula = std::gcd(k, cfg.n);
    r.quotient_formula = cfg.n / r.gcd_formula;
    r.matches_gcd = (r.detected == r.gcd_formula);
    r.matches_quotient = (r.detected == r.quotient_formula);
    return r;
}

inline int circle_period(int k, const PolygonConfig& cfg) {
    return circle_period_report(k, cfg).detected;
}

// The n-1 interior fixed points s_k of F, one per branch.
inline std::vector<PeriodicPointReport> fixed_points_of_F(const PolygonConfig& cfg) {
    std::vector<PeriodicPointReport> out;
    out.reserve(cfg.n - 1);
    for (int k = 1; k < cfg.n; ++k) {
        PeriodicPointReport rep;
        rep.word = {k};
        rep.point = detail::branch_fixed_point(k, cfg);
        rep.matrix = cfg.branch[k - 1];
        rep.circle_period = circle_period(k, cfg);
        out.push_back(std::move(rep));
    }
    return out;
}

struct PeriodicOptions {
    bool oriented = false;
    bool exact = false;    // integer-matrix certification; requires oriented and n == 4
    int max_len_cap = 8;
    double tol = 1e-10;
};

namespace detail {

struct Chart {
    int n = 0;
    double lo = 0, hi = 0;
    const std::vector<Moebius<double>>* maps = nullptr;
    const PolygonConfig* cfg = nullptr;
    const OrientedMap* om = nullptr;

    int index(double t) const {
        return om ? oriented_branch_index(t, *om) : branch_index(t, *cfg);
    }
    std::pair<double, int> step(double t) const {
        if (om) return oriented_step(t, *om);
        // literal branch application, no tangency override: periodic-point
        // verification must match the composed matrices
        int k = branch_index(t, *cfg);
        return {cfg->branch[k - 1](t), k};
    }
};

inline Chart make_chart(const PolygonConfig& cfg, const OrientedMap* om) {
    Chart ch;
    ch.n = cfg.n;
    ch.cfg = &cfg;
    ch.om = om;
    if (om) {
        ch.lo = 0;
        ch.hi = om->length;
        ch.maps = &om->branch;
    } else {
        ch.lo = -cfg.t_star;
        ch.hi = cfg.t_star;
        ch.maps = &cfg.branch;
    }
    return ch;
}

// Candidate realizes the word cyclically and returns to itself.
inline bool realizes_word(double x, const std::vector<int>& word, const Chart& ch, double tol) {
    double t = x;
    for (int want : word) {
        if (t < ch.lo - 1e-12 || t > ch.hi + 1e-12) return false;
        t = std::clamp(t, ch.lo, ch.hi);
        auto [next, k] = ch.step(t);
        if (k != want) return false;
        t = next;
    }
    return std::abs(t - x) < tol;
}

// Integer annihilating polynomial from the exact composed matrix: quadratic
// A t^2 + B t + C, reduced to a linear factor when the fixed point is rational.
inline std::array<long long, 3> exact_min_poly(const Moebius<BigRational>& m, double root) {
    auto z = integer_matrix(m);
    BigInt A = z[2], B = z[3] - z[0], C = -z[1];
    if (A == 0 && B == 0) throw std::logic_error("exact_min_poly: identity matrix");
    auto reduce3 = [](BigInt a, BigInt b, BigInt c) {
        using boost::multiprecision::gcd;
        BigInt g = gcd(gcd(a, b), c);
        if (g != 0) { a /= g; b /= g; c /= g; }
        BigInt lead = a != 0 ? a : (b != 0 ? b : c);
        if (lead < 0) { a = -a; b = -b; c = -c; }
        return std::array<BigInt, 3>{a, b, c};
    };
    std::array<BigInt, 3> poly;
    if (A == 0) {
        poly = reduce3(0, B, C);
    } else {
        BigInt disc = B * B - 4 * A * C;
        BigInt s;
        if (is_perfect_square(disc, &s)) {
            // rational roots (-B +- s)/(2A): pick the one matching the float root
            BigRational r1(-B + s, 2 * A), r2(-B - s, 2 * A);
            BigRational r = std::abs(to_double(r1) - root) <= std::abs(to_double(r2) - root) ? r1 : r2;
            using boost::multiprecision::denominator;
            using boost::multiprecision::numerator;
            poly = reduce3(0, denominator(r), -numerator(r));
        } else {
            poly = reduce3(A, B, C);
        }
    }
    std::array<long long, 3> out{};
    for (int i = 0; i < 3; ++i) {
        if (poly[i] < std::numeric_limits<long long>::min() ||
            poly[i] > std::numeric_limits<long long>::max())
            throw std::overflow_error("exact_min_poly: coefficient out of range");
        out[i] = poly[i].convert_to<long long>();
    }
    return out;
}

inline bool is_primitive(const std::vector<int>& w) {
    std::size_t m = w.size();
    for (std::size_t p = 1; p < m; ++p) {
        if (m % p != 0) continue;
        bool rep = true;
        for (std::size_t i = p; i < m && rep; ++i) rep = (w[i] == w[i % p]);
        if (rep) return false;
    }
    return true;
}

inline bool is_canonical_rotation(const std::vector<int>& w) {
    std::size_t m = w.size();
    std::vector<int> rot(w);
    for (std::size_t s = 1; s < m; ++s) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (std::lexicographical_compare(rot.begin(), rot.end(), w.begin(), w.end())) return false;
    }
    return true;
}

}  // namespace detail

// Fixed point of the composed branch map along the word, if the word is
// admissible (its Moebius fixed point actually realizes the itinerary).
inline std::optional<PeriodicPointReport> periodic_points(const std::vector<int>& word,
                                                          const PolygonConfig& cfg,
                                                          const PeriodicOptions& opts = {}) {
    if (word.empty()) throw std::invalid_argument("periodic_points: empty word");
    if (static_cast<int>(word.size()) > opts.max_len_cap)
        throw std::invalid_argument("periodic_points: word length exceeds cap");
    for (int k : word)
        if (k < 1 || k >= cfg.n) throw std::invalid_argument("periodic_points: bad symbol");
    if (opts.exact && (!opts.oriented || cfg.n != 4))
        throw std::invalid_argument("periodic_points: exact mode requires oriented n = 4");

    OrientedMap om_storage;
    const OrientedMap* om = nullptr;
    if (opts.oriented) {
        om_storage = make_oriented(cfg);
        om = &om_storage;
    }
    auto chart = detail::make_chart(cfg, om);

    Moebius<double> m = Moebius<double>::identity();
    for (int k : word) m = normalized((*chart.maps)[k - 1] * m);
    if (m.is_identity()) return std::nullopt;

    auto fp = fixed_points(m);
    for (int i = 0; i < fp.count; ++i) {
        if (fp.points[i].infinite) continue;
        double x = fp.points[i].value;
        if (x < chart.lo - 1e-12 || x > chart.hi + 1e-12) continue;
        x = std::clamp(x, chart.lo, chart.hi);
        if (!om) {
            // parabolic tangency endpoints are reported separately, not here;
            // their double roots carry ~sqrt(eps) noise, hence the wide margin
            if (std::abs(x - cfg.t_star) < 1e-6 || std::abs(x + cfg.t_star) < 1e-6) continue;
        }
        if (!detail::realizes_word(x, word, chart, opts.tol)) continue;

        PeriodicPointReport rep;
        rep.word = word;
        rep.point = x;
        rep.matrix = m;
        double centered = om ? om->h_inv(x) : x;
        try {
            rep.circle_period = detail::circle_return_time(2 * std::atan((long double)centered),
                                                           cfg.n,
                                                           static_cast<int>(word.size()));
        } catch (const std::logic_error&) {
            rep.circle_period = 0;  // rotation angle not resolvable at 1e-9
        }
        if (opts.exact) {
            Moebius<BigRational> me(BigRational(1), BigRational(0), BigRational(0), BigRational(1));
            for (int k : word) me = normalized(om->branch_exact[k - 1] * me);
            rep.min_poly = detail::exact_min_poly(me, x);
        }
        return rep;
    }
    return std::nullopt;
}

// All admissible periodic orbits of word length <= max_len, one report per
// orbit (canonical primitive word).
inline std::vector<PeriodicPointReport> enumerate_periodic(int max_len, const PolygonConfig& cfg,
                                                           const PeriodicOptions& opts = {}) {
    if (max_len < 1) throw std::invalid_argument("enumerate_periodic: max_len must be >= 1");
    if (max_len > opts.max_len_cap) throw std::invalid_argument("enumerate_periodic: cap exceeded");
    std::vector<PeriodicPointReport> out;
    const int alphabet = cfg.n - 1;
    for (int m = 1; m <= max_len; ++m) {
        std::vector<int> word(m, 1);
        while (true) {
            if (detail::is_primitive(word) && detail::is_canonical_rotation(word)) {
                if (auto rep = periodic_points(word, cfg, opts)) {
                    bool dup = false;
                    for (const auto& r : out)
                        if (r.word.size() == rep->word.size() &&
                            std::abs(r.point - rep->point) < 1e-9)
                            dup = true;
                    if (!dup) out.push_back(std::move(*rep));
                }
            }
            int i = m - 1;
            while (i >= 0 && word[i] == alphabet) word[i--] = 1;
            if (i < 0) break;
            ++word[i];
        }
    }
    return out;
}

}  // namespace fg
