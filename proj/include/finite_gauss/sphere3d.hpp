#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "finite_gauss/geometry.hpp"

namespace fg {

struct Vec3 {
    double x = 0, y = 0, z = 0;
};

inline double dot(Vec3 u, Vec3 v) { return u.x * v.x + u.y * v.y + u.z * v.z; }
inline Vec3 operator+(Vec3 u, Vec3 v) { return {u.x + v.x, u.y + v.y, u.z + v.z}; }
inline Vec3 operator-(Vec3 u, Vec3 v) { return {u.x - v.x, u.y - v.y, u.z - v.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

// Regular tetrahedron circumscribed about the unit sphere: |v_j| = 3,
// v_i . v_j = -3 for i != j; face tangency points are -v_j / 3.
struct TetraConfig {
    std::array<Vec3, 4> vertices{};
    std::array<Vec3, 4> touch_points{};
};

inline TetraConfig make_tetra_config() {
    TetraConfig cfg;
    const double r = 2 * std::sqrt(2.0);
    cfg.vertices[0] = {0, 0, 3};
    for (int j = 0; j < 3; ++j) {
        double az = 2 * kPi * j / 3;
        cfg.vertices[j + 1] = {r * std::cos(az), r * std::sin(az), -1};
    }
    for (int j = 0; j < 4; ++j) cfg.touch_points[j] = (-1.0 / 3.0) * cfg.vertices[j];
    return cfg;
}

// 1-based index of the nearest vertex (equivalently, the bisector-plane
// partition cell); ties go to the lowest index.
inline int region_of(Vec3 z, const TetraConfig& cfg) {
    int best = 1;
    double best_dot = dot(z, cfg.vertices[0]);
    for (int j = 1; j < 4; ++j) {
        double d = dot(z, cfg.vertices[j]);
        if (d > best_dot) {
            best_dot = d;
            best = j + 1;
        }
    }
    return best;
}

// Second intersection of the line through p and the unit-sphere point z.
inline Vec3 chord_project(Vec3 z, Vec3 p) {
    Vec3 w = z - p;
    double tau = 2 * dot(z, p - z) / dot(w, w);
    return z + tau * (z - p);
}

// The 3d chord-projection map: project z through its region's vertex.
inline Vec3 sphere_map(Vec3 z, const TetraConfig& cfg) {
    return chord_project(z, cfg.vertices[region_of(z, cfg) - 1]);
}

// Stereographic chart with the north pole (0,0,1) at (u,v) = (0,0).
inline Vec3 chart_to_sphere(double u, double v) {
    double s = 1 + u * u + v * v;
    return {2 * u / s, 2 * v / s, (1 - u * u - v * v) / s};
}

inline std::array<double, 2> sphere_to_chart(Vec3 z) {
    if (z.z == -1.0) throw std::domain_error("sphere_to_chart: south pole");
    return {z.x / (1 + z.z), z.y / (1 + z.z)};
}

// Chart form of the chord projection through P_1 = (0,0,3); fixes the circle
// u^2 + v^2 = 1/2 (the z = 1/3 tangency circle) pointwise.
inline std::array<double, 2> chart_q(double u, double v) {
    double s = 2 * (u * u + v * v);
    if (s == 0.0) throw std::domain_error("chart_q: singular at the north pole");
    return {u / s, v / s};
}

using Mat3 = std::array<std::array<double, 3>, 3>;

inline Vec3 apply(const Mat3& m, Vec3 v) {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

// The 12 rotations of the tetrahedral group, one per even vertex permutation.
inline std::vector<Mat3> tetra_rotations(const TetraConfig& cfg) {
    // basis B = [v2 v3 v4] (columns); R = [v_s(2) v_s(3) v_s(4)] B^{-1}
    auto col = [&](int j) { return cfg.vertices[j]; };
    Vec3 b1 = col(1), b2 = col(2), b3 = col(3);
    auto det3 = [](Vec3 a, Vec3 b, Vec3 c) {
        return a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) +
               a.z * (b.x * c.y - b.y * c.x);
    };
    double D = det3(b1, b2, b3);
    // rows of B^{-1} via cross products
    auto cross = [](Vec3 a, Vec3 b) {
        return Vec3{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    };
    Vec3 r1 = (1.0 / D) * cross(b2, b3);
    Vec3 r2 = (1.0 / D) * cross(b3, b1);
    Vec3 r3 = (1.0 / D) * cross(b1, b2);

    std::vector<Mat3> out;
    // enumerate all 24 permutations, keep the even ones
    std::array<int, 4> p{0, 1, 2, 3};
    do {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (p[i] > p[j]) ++inv;
        if (inv % 2 != 0) continue;
        Vec3 c1 = cfg.vertices[p[1]], c2 = cfg.vertices[p[2]], c3 = cfg.vertices[p[3]];
        Mat3 R{};
        auto put = [&](Vec3 c, Vec3 r) {
            R[0][0] += c.x * r.x; R[0][1] += c.x * r.y; R[0][2] += c.x * r.z;
            R[1][0] += c.y * r.x; R[1][1] += c.y * r.y; R[1][2] += c.y * r.z;
            R[2][0] += c.z * r.x; R[2][1] += c.z * r.y; R[2][2] += c.z * r.z;
        };
        put(c1, r1);
        put(c2, r2);
        put(c3, r3);
        out.push_back(R);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// ---------------------------------------------------------------------------
// Monte-Carlo histogram on an equal-area (z-band x azimuth) grid.
// ---------------------------------------------------------------------------

inline constexpr std::array<double, 3> kCapRadii{0.2, 0.1, 0.05};

struct SphereSimOptions {
    std::uint64_t seed = 42;
    std::uint64_t iterations = 0;
    std::uint64_t burn_in = 0;
    int bands = 32;
    int azims = 32;
    int streams = 8;   // fixed decomposition; results do not depend on workers
    int workers = 1;
};

struct SphereHistogram {
    int bands = 0, azims = 0;
    std::vector<std::uint64_t> counts;                      // bands*azims, row-major
    std::uint64_t total = 0;
    std::uint64_t discarded = 0;
    double max_drift = 0;
    std::array<std::array<std::uint64_t, 3>, 4> cap_counts{};  // [touch point][radius]
    std::uint64_t seed = 0, iterations = 0, burn_in = 0;
    int streams = 0;

    double bin_area() const { return 4 * kPi / (bands * azims); }
};

namespace detail {

struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double next_double() {  // [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
};

inline Vec3 random_unit(SplitMix64& rng) {
    for (;;) {
        Vec3 v{2 * rng.next_double() - 1, 2 * rng.next_double() - 1, 2 * rng.next_double() - 1};
        double n2 = dot(v, v);
        if (n2 > 1e-8 && n2 <= 1.0) return (1.0 / std::sqrt(n2)) * v;
    }
}

inline std::uint64_t stream_share(std::uint64_t total, int streams, int s) {
    std::uint64_t base = total / streams;
    return base + (static_cast<std::uint64_t>(s) < total % streams ? 1 : 0);
}

inline void run_stream(int s, const SphereSimOptions& opt, const TetraConfig& cfg,
                       SphereHistogram& h) {
    SplitMix64 seeder{opt.seed};
    std::uint64_t stream_seed = seeder.next() ^ (0x9E3779B97F4A7C15ULL * (s + 1));
    SplitMix64 rng{stream_seed};
    Vec3 z = random_unit(rng);

    const std::uint64_t n_iter = stream_share(opt.iterations, opt.streams, s);
    const std::uint64_t n_burn = stream_share(opt.burn_in, opt.streams, s);
    std::array<double, 3> cap_cos{};
    for (int r = 0; r < 3; ++r) cap_cos[r] = std::cos(kCapRadii[r]);

    for (std::uint64_t i = 0; i < n_iter; ++i) {
        z = sphere_map(z, cfg);
        double n = norm(z);
        double drift = std::abs(n - 1.0);
        if (drift > 1e-6) throw std::runtime_error("simulate_histogram: norm drift exceeded 1e-6");
        if (drift > h.max_drift) h.max_drift = drift;
        z = (1.0 / n) * z;
        if (i < n_burn) {
            ++h.discarded;
            continue;
        }
        int band = static_cast<int>((1.0 - z.z) / 2.0 * h.bands);
        band = std::clamp(band, 0, h.bands - 1);
        int az = static_cast<int>((std::atan2(z.y, z.x) + kPi) / (2 * kPi) * h.azims);
        az = std::clamp(az, 0, h.azims - 1);
        ++h.counts[static_cast<std::size_t>(band) * h.azims + az];
        for (int j = 0; j < 4; ++j) {
            double d = dot(z, cfg.touch_points[j]);
            for (int r = 0; r < 3; ++r)
                if (d >= cap_cos[r]) ++h.cap_counts[j][r];
        }
    }
    h.total += n_iter;
}

}  // namespace detail

// Deterministic for fixed (seed, iterations, burn_in, streams): the work is
// decomposed into `streams` independently seeded orbits and integer counts are
// summed, so the result is independent of the worker count.
inline SphereHistogram simulate_histogram(const SphereSimOptions& opt, const TetraConfig& cfg) {
    if (opt.iterations == 0) throw std::invalid_argument("simulate_histogram: zero iterations");
    if (opt.bands < 1 || opt.azims < 1) throw std::invalid_argument("simulate_histogram: bad bins");
    if (opt.streams < 1) throw std::invalid_argument("simulate_histogram: bad stream count");

    auto blank = [&] {
        SphereHistogram h;
        h.bands = opt.bands;
        h.azims = opt.azims;
        h.counts.assign(static_cast<std::size_t>(opt.bands) * opt.azims, 0);
        h.seed = opt.seed;
        h.iterations = opt.iterations;
        h.burn_in = opt.burn_in;
        h.streams = opt.streams;
        return h;
    };

    std::vector<SphereHistogram> partial(opt.streams, blank());
    int workers = std::clamp(opt.workers, 1, opt.streams);
    if (workers == 1) {
        for (int s = 0; s < opt.streams; ++s) detail::run_stream(s, opt, cfg, partial[s]);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr err;
        std::mutex err_mu;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (int s = w; s < opt.streams; s += workers)
                        detail::run_stream(s, opt, cfg, partial[s]);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        if (err) std::rethrow_exception(err);
    }

    SphereHistogram h = blank();
    for (const auto& p : partial) {
        for (std::size_t i = 0; i < h.counts.size(); ++i) h.counts[i] += p.counts[i];
        h.total += p.total;
        h.discarded += p.discarded;
        h.max_drift = std::max(h.max_drift, p.max_drift);
        for (int j = 0; j < 4; ++j)
            for (int r = 0; r < 3; ++r) h.cap_counts[j][r] += p.cap_counts[j][r];
    }
    return h;
}

// Spherical-cap area for the angular radii used by cap_counts.
inline double cap_area(double radius) { return 2 * kPi * (1 - std::cos(radius)); }

}  // namespace fg
