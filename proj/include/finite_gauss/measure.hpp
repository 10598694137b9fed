#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "finite_gauss/geometry.hpp"
#include "finite_gauss/interval_map.hpp"

namespace fg {

struct DensityValue {
    double value = 0;
    bool at_singularity = false;
};

struct MeasureValue {
    double mass = 0;
};

// Invariant density on the interval, 2 t* / (t*^2 - t^2); infinite at the
// tangency endpoints.
inline DensityValue density_t(double t, const PolygonConfig& cfg) {
    const double ts = cfg.t_star;
    if (t < -ts || t > ts) throw std::domain_error("density_t: t outside [-t*, t*]");
    if (t == ts || t == -ts) return {std::numeric_limits<double>::infinity(), true};
    // factored form stays fully accurate next to the poles
    return {2 * ts / ((ts - t) * (ts + t)), false};
}

// Angular density |sin(pi/n) / (cos(pi/n) - cos phi')| with phi reduced
// modulo the arc 2*pi/n and measured from the arc center.
inline DensityValue density_angle(double phi, const PolygonConfig& cfg) {
    const double half_arc = kPi / cfg.n;  // tangencies sit at odd multiples of this
    double r = std::remainder(phi, 2 * half_arc);
    if (std::abs(r) == half_arc) return {std::numeric_limits<double>::infinity(), true};
    // cos r - cos a = 2 sin((a+r)/2) sin((a-r)/2), cancellation-free at the arc ends
    double v = std::abs(std::sin(half_arc) /
                        (2 * std::sin((half_arc + r) / 2) * std::sin((half_arc - r) / 2)));
    return {v, false};
}

// mass([a,b]) = ln[ (t*-a)(t*+b) / ((t*+a)(t*-b)) ]; the antiderivative of the
// density is ln((t*+t)/(t*-t)).
inline MeasureValue measure_interval(double a, double b, const PolygonConfig& cfg) {
    const double ts = cfg.t_star;
    if (a > b) throw std::invalid_argument("measure_interval: inverted endpoints");
    if (a < -ts || b > ts) throw std::domain_error("measure_interval: endpoints outside [-t*, t*]");
    if (a == b) return {0.0};
    if (a == -ts || b == ts) return {std::numeric_limits<double>::infinity()};
    return {std::log(((ts - a) * (ts + b)) / ((ts + a) * (ts - b)))};
}

// Relative residual of the transfer-operator identity
//   rho(t) = sum_k rho(F_k^{-1} t) |(F_k^{-1})'(t)|,   |(F_k^{-1})'| = t*^2/(a_k t + b_k)^2.
inline double transfer_operator_residual(double t, const PolygonConfig& cfg) {
    const double ts = cfg.t_star;
    if (!(std::abs(t) < ts)) throw std::domain_error("transfer_operator_residual: |t| must be < t*");
    const double ts2 = ts * ts;
    double sum = 0;
    for (int k = 1; k < cfg.n; ++k) {
        double u = inverse_branch(t, k, cfg);
        double den = cfg.a(k) * t + cfg.b(k);
        sum += density_t(u, cfg).value * ts2 / (den * den);
    }
    double rho = density_t(t, cfg).value;
    return std::abs(sum - rho) / rho;
}

// Relative residual of the telescoping product identity
//   prod_k (F_k^{-1}(t) - t*)/(F_k^{-1}(t) + t*) = (-1)^n (t + t*)/(t - t*).
inline double telescoping_residual(double t, const PolygonConfig& cfg) {
    const double ts = cfg.t_star;
    if (!(std::abs(t) < ts)) throw std::domain_error("telescoping_residual: |t| must be < t*");
    double prod = 1;
    for (int k = 1; k < cfg.n; ++k) {
        double u = inverse_branch(t, k, cfg);
        prod *= (u - ts) / (u + ts);
    }
    double target = (cfg.n % 2 == 0 ? 1.0 : -1.0) * (t + ts) / (t - ts);
    return std::abs(prod - target) / std::abs(target);
}

// The factor product prod_k (1 - t* tau_k)/(1 + t* tau_k), tau_k = tan(pi k/n),
// multiplies to one over each mirror pair (k, n-k) because tau_{n-k} = -tau_k.
// Worst normalized deviation of the pair identity over all pairs.
inline double auxiliary_pair_residual(const PolygonConfig& cfg) {
    const double ts = cfg.t_star;
    double worst = 0;
    for (int k = 1; 2 * k < cfg.n; ++k) {
        double tk = cfg.b(k) / cfg.a(k);
        double tnk = cfg.b(cfg.n - k) / cfg.a(cfg.n - k);
        double x = ts * tk, y = ts * tnk;
        // (1-x)(1-y) = (1+x)(1+y)  <=>  x + y = 0
        double resid = std::abs(x + y) / (1 + std::abs(x * y));
        worst = std::max(worst, resid);
    }
    return worst;
}

// Signed value of the full factor product, computed in the cancellation-free
// form (1 - t* tau_k)/(1 + t* tau_k) = cos((2k+1)pi/2n)/cos((2k-1)pi/2n),
// which telescopes to cos(pi - pi/2n)/cos(pi/2n) = -1 for every n.
inline double auxiliary_product_signed(const PolygonConfig& cfg) {
    double prod = 1;
    for (int k = 1; k < cfg.n; ++k) {
        double num = std::cos(kPi * (2 * k + 1) / (2 * cfg.n));
        double den = std::cos(kPi * (2 * k - 1) / (2 * cfg.n));
        prod *= num / den;
    }
    return prod;
}

// Relative deviation of mu(F^{-1}[a,b]) from mu([a,b]) using the closed-form
// measure on each preimage interval.
inline double preimage_measure_residual(double a, double b, const PolygonConfig& cfg) {
    const double ts = cfg.t_star;
    if (!(a >= -ts && b <= ts) || !(std::abs(a) < ts && std::abs(b) < ts))
        throw std::domain_error("preimage_measure_residual: endpoints must be interior");
    if (a > b) throw std::invalid_argument("preimage_measure_residual: inverted endpoints");
    if (a == b) return 0.0;
    double sum = 0;
    for (int k = 1; k < cfg.n; ++k) {
        double u = inverse_branch(a, k, cfg);
        double v = inverse_branch(b, k, cfg);  // inverse branches decrease: v < u
        sum += measure_interval(std::min(u, v), std::max(u, v), cfg).mass;
    }
    double base = measure_interval(a, b, cfg).mass;
    return std::abs(sum - base) / base;
}

// Invariant density of the T_a family: proportional to 1/(1 - (a-2)^2 t^2),
// i.e. |1/(t^2 - 1/(a-2)^2)| for a != 2 and Lebesgue for a == 2. Reduces to
// |1/(t^2 - 1)| at the regular value a = 3. Positive on [-1, 1] for a in (1, 3].
inline double triangle_invariant_density(double t, const TriangleParam& p) {
    if (p.a == 2.0) return 1.0;
    double alpha2 = 1.0 / ((p.a - 2.0) * (p.a - 2.0));
    double den = alpha2 - t * t;
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(1.0 / den);
}

// Relative transfer-operator residual for T_a with its invariant density.
inline double triangle_density_residual(double t, const TriangleParam& p) {
    if (!(std::abs(t) < 1.0)) throw std::domain_error("triangle_density_residual: |t| must be < 1");
    const double a = p.a;
    auto left_inv = [&](double x) { return (x + 1) / ((a - 2) * x - a); };
    auto left_inv_deriv = [&](double x) {
        double den = (a - 2) * x - a;
        return std::abs((2 - 2 * a) / (den * den));
    };
    double uL = left_inv(t), uR = -left_inv(-t);
    double sum = triangle_invariant_density(uL, p) * left_inv_deriv(t) +
                 triangle_invariant_density(uR, p) * left_inv_deriv(-t);
    double rho = triangle_invariant_density(t, p);
    return std::abs(sum - rho) / rho;
}

}  // namespace fg
