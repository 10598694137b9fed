// fg: analytic verification suites, orbit/expansion dumps, periodic-point
// tables, and sphere simulation for the chord-projection circle map family.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "finite_gauss/geometry.hpp"
#include "finite_gauss/interval_map.hpp"
#include "finite_gauss/measure.hpp"
#include "finite_gauss/periodic.hpp"
#include "finite_gauss/report.hpp"
#include "finite_gauss/sphere3d.hpp"

namespace {

using nlohmann::ordered_json;

void print_report(const fg::RunReport& rep, bool as_json) {
    if (as_json) {
        std::printf("%s\n", fg::to_json(rep).dump(2).c_str());
        return;
    }
    for (const auto& c : rep.checks)
        std::printf("[%s] %-22s residual=%-12.3g tol=%g\n", c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.residual, c.tol);
    for (const auto& o : rep.outputs) std::printf("wrote %s\n", o.c_str());
    std::printf("%s\n", rep.all_passed() ? "all checks passed" : "CHECKS FAILED");
}

int cmd_verify(int n, int samples, double tol, std::uint64_t seed, bool as_json) {
    auto cfg = fg::make_polygon_config(n);
    auto om = fg::make_oriented(cfg);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.999 * cfg.t_star, 0.999 * cfg.t_star);
    // the telescoping product loses ~2 digits of conditioning in the outer
    // per-mille band, so its 1e-12 check samples the interior band
    std::uniform_real_distribution<double> u_inner(-0.99 * cfg.t_star, 0.99 * cfg.t_star);

    fg::RunReport rep;
    rep.command = "verify";
    rep.params = {{"n", std::to_string(n)},
                  {"samples", std::to_string(samples)},
                  {"tol", fg::csv_double(tol)},
                  {"seed", std::to_string(seed)}};

    double transfer = 0, telescoping = 0, preimage = 0, conjugacy = 0, coord = 0;
    for (int i = 0; i < samples; ++i) {
        double t = u(rng);
        transfer = std::max(transfer, fg::transfer_operator_residual(t, cfg));
        telescoping = std::max(telescoping, fg::telescoping_residual(u_inner(rng), cfg));

        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        if (b - a > 1e-9)
            preimage = std::max(preimage, fg::preimage_measure_residual(a, b, cfg));

        double y = om.h(t);
        bool near_cut = false;
        for (double c : om.cut)
            if (std::abs(y - c) < 1e-9) near_cut = true;
        if (!near_cut) {
            double lhs = fg::oriented_map(y, om);
            double rhs = om.h(fg::step_F(t, cfg).first);
            conjugacy = std::max(conjugacy, std::abs(lhs - rhs) / (1 + std::abs(rhs)));
        }

        double phi = (t / cfg.t_star) * fg::kPi / n * 0.999;
        double lhs = fg::density_angle(phi, cfg).value;
        double rhs = fg::density_t(std::tan(phi / 2), cfg).value *
                     (1 + std::pow(std::tan(phi / 2), 2)) / 2;
        coord = std::max(coord, std::abs(lhs - rhs) / rhs);
    }
    double stress = std::max(fg::transfer_operator_residual(0.999 * cfg.t_star, cfg),
                             fg::transfer_operator_residual(-0.999 * cfg.t_star, cfg));

    rep.checks.push_back(fg::make_check("transfer", transfer, tol));
    rep.checks.push_back(fg::make_check("transfer_stress", stress, 1e-8));
    rep.checks.push_back(fg::make_check("telescoping", telescoping, 1e-12));
    rep.checks.push_back(fg::make_check("auxiliary_pairs", fg::auxiliary_pair_residual(cfg), 1e-12));
    rep.checks.push_back(fg::make_check(
        "auxiliary_product", std::abs(std::abs(fg::auxiliary_product_signed(cfg)) - 1.0), 1e-12));
    rep.checks.push_back(fg::make_check("preimage_measure", preimage, tol));
    rep.checks.push_back(fg::make_check("conjugacy", conjugacy, tol));
    rep.checks.push_back(fg::make_check("coordinate_change", coord, 1e-12));
    rep.checks.push_back(fg::make_check(
        "measure_ln3",
        std::abs(fg::measure_interval(0, cfg.t_star / 2, cfg).mass - std::log(3.0)), 1e-12));

    auto fps = fg::fixed_points_of_F(cfg);
    double fp_resid = fps.size() == static_cast<std::size_t>(n - 1)
                          ? 0.0
                          : std::numeric_limits<double>::infinity();
    for (const auto& f : fps)
        fp_resid = std::max(fp_resid, std::abs(fg::step_F(f.point, cfg).first - f.point));
    rep.checks.push_back(fg::make_check("fixed_points", fp_resid, 1e-10));

    if (n == 4) {
        double sq = 0;
        std::uniform_real_distribution<double> uo(0.0, 1.0);
        for (int i = 0; i < samples; ++i) {
            double t = uo(rng);
            double want = t <= 1.0 / 3.0 ? (3 * t - 1) / (t - 1)
                          : t <= 0.5     ? 1 / t - 2
                                         : (t - 1) / (1 - 3 * t);
            sq = std::max(sq, std::abs(fg::oriented_map(t, om) - want));
        }
        rep.checks.push_back(fg::make_check("square_branches", sq, 1e-12));
        double cuts = std::abs(om.cut[1] - 0.5) + std::abs(om.cut[2] - 1.0 / 3.0);
        rep.checks.push_back(fg::make_check("square_cuts", cuts, 1e-15));
    }

    print_report(rep, as_json);
    return rep.exit_code();
}

int cmd_orbit(int n, double t0, int steps, bool oriented, const std::string& out) {
    auto cfg = fg::make_polygon_config(n);
    std::vector<std::vector<std::string>> rows;
    if (oriented) {
        auto om = fg::make_oriented(cfg);
        double t = t0;
        for (int i = 0; i < steps; ++i) {
            auto [next, k] = fg::oriented_step(t, om);
            rows.push_back({std::to_string(i), fg::csv_double(t), std::to_string(k)});
            t = next;
        }
        rows.push_back({std::to_string(steps), fg::csv_double(t), ""});
    } else {
        auto rec = fg::encode_orbit(t0, steps, cfg);
        for (std::size_t i = 0; i < rec.symbols.size(); ++i)
            rows.push_back({std::to_string(i), fg::csv_double(rec.points[i]),
                            std::to_string(rec.symbols[i])});
        rows.push_back({std::to_string(rec.symbols.size()),
                        fg::csv_double(rec.points.back()), ""});
        if (rec.escaped_at)
            std::fprintf(stderr, "orbit reached a branch boundary at step %zu; stopped\n",
                         *rec.escaped_at);
    }
    fg::write_csv(out, "step,t,symbol", rows);
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

int cmd_encode(int n, double t0, int digits) {
    auto cfg = fg::make_polygon_config(n);
    auto rec = fg::encode_orbit(t0, digits, cfg);
    std::printf("t0 = %s\nword =", fg::csv_double(t0).c_str());
    for (int s : rec.symbols) std::printf(" %d", s);
    std::printf("\n");
    if (rec.escaped_at)
        std::printf("stopped at step %zu (branch boundary)\n", *rec.escaped_at);
    if (!rec.symbols.empty()) {
        auto [lo, hi] = fg::cylinder_interval(rec.symbols, cfg);
        std::printf("cylinder = [%s, %s]  width = %.3g\n", fg::csv_double(lo).c_str(),
                    fg::csv_double(hi).c_str(), hi - lo);
    }
    return 0;
}

int cmd_periodic(int n, int max_len, bool oriented, bool exact, bool as_json) {
    auto cfg = fg::make_polygon_config(n);
    fg::PeriodicOptions opts;
    opts.oriented = oriented;
    opts.exact = exact;
    auto reports = fg::enumerate_periodic(max_len, cfg, opts);

    if (as_json) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : reports) {
            ordered_json j;
            j["word"] = r.word;
            j["point"] = fg::json_number(r.point);
            if (r.min_poly) j["min_poly"] = *r.min_poly;
            j["circle_period"] = r.circle_period;
            arr.push_back(j);
        }
        std::printf("%s\n", arr.dump(2).c_str());
        return 0;
    }
    std::printf("%zu periodic orbit(s), word length <= %d%s\n", reports.size(), max_len,
                oriented ? " (oriented chart)" : "");
    for (const auto& r : reports) {
        std::printf("  word");
        for (int s : r.word) std::printf(" %d", s);
        std::printf("  point %s  circle_period %d", fg::csv_double(r.point).c_str(),
                    r.circle_period);
        if (r.min_poly) {
            auto p = *r.min_poly;
            std::printf("  min_poly %+lld t^2 %+lld t %+lld = 0", p[0], p[1], p[2]);
        }
        std::printf("\n");
    }
    if (!oriented)
        std::printf("tangency endpoints +-t* = +-%s are parabolic and reported separately\n",
                    fg::csv_double(cfg.t_star).c_str());
    return 0;
}

int cmd_triangle(double a, int samples, double tol, std::uint64_t seed, bool as_json) {
    auto p = fg::make_triangle_param(a);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.999, 0.999);
    double residual = 0, symmetry = 0;
    for (int i = 0; i < samples; ++i) {
        double t = u(rng);
        residual = std::max(residual, fg::triangle_density_residual(t, p));
        symmetry = std::max(symmetry,
                            std::abs(fg::triangle_map(t, p) + fg::triangle_map(-t, p)));
    }
    fg::RunReport rep;
    rep.command = "triangle";
    rep.params = {{"a", fg::csv_double(a)},
                  {"samples", std::to_string(samples)},
                  {"tol", fg::csv_double(tol)},
                  {"seed", std::to_string(seed)}};
    rep.checks.push_back(fg::make_check("density_transfer", residual, tol));
    rep.checks.push_back(fg::make_check("odd_symmetry", symmetry, 1e-12));
    print_report(rep, as_json);
    return rep.exit_code();
}

int cmd_sphere(std::uint64_t iterations, int bins, std::uint64_t burn_in, std::uint64_t seed,
               int workers, int streams, const std::string& out, bool as_json) {
    int side = static_cast<int>(std::lround(std::sqrt(double(bins))));
    if (side * side != bins || side < 1)
        throw CLI::ValidationError("--bins must be a perfect square");
    auto cfg = fg::make_tetra_config();
    fg::SphereSimOptions opt;
    opt.seed = seed;
    opt.iterations = iterations;
    opt.burn_in = burn_in;
    opt.bands = side;
    opt.azims = side;
    opt.streams = streams;
    opt.workers = workers;
    auto h = fg::simulate_histogram(opt, cfg);

    std::vector<std::vector<std::string>> rows;
    rows.reserve(h.counts.size());
    for (int b = 0; b < h.bands; ++b)
        for (int az = 0; az < h.azims; ++az)
            rows.push_back({std::to_string(b), std::to_string(az),
                            std::to_string(h.counts[std::size_t(b) * h.azims + az]),
                            fg::csv_double(h.bin_area())});
    fg::write_csv(out, "band,azimuth_bin,count,bin_area", rows);

    double touch_fixed = 0;
    for (int j = 0; j < 4; ++j) {
        auto tp = cfg.touch_points[j];
        touch_fixed = std::max(touch_fixed, fg::norm(fg::sphere_map(tp, cfg) - tp));
    }
    double cap_monotone = 0;  // positive if any cap sequence fails to increase
    for (int j = 0; j < 4; ++j)
        for (int r = 0; r + 1 < 3; ++r) {
            double coarse = double(h.cap_counts[j][r]) / fg::cap_area(fg::kCapRadii[r]);
            double fine = double(h.cap_counts[j][r + 1]) / fg::cap_area(fg::kCapRadii[r + 1]);
            cap_monotone = std::max(cap_monotone, (coarse - fine) / (coarse + 1));
        }

    fg::RunReport rep;
    rep.command = "sphere";
    rep.params = {{"iterations", std::to_string(iterations)},
                  {"bins", std::to_string(bins)},
                  {"burn_in", std::to_string(burn_in)},
                  {"seed", std::to_string(seed)},
                  {"workers", std::to_string(workers)},
                  {"streams", std::to_string(streams)}};
    rep.checks.push_back(fg::make_check("norm_drift", h.max_drift, 1e-6));
    rep.checks.push_back(fg::make_check("touch_points_fixed", touch_fixed, 1e-12));
    rep.checks.push_back(fg::make_check("cap_density_monotone", cap_monotone, 1e-12));
    rep.outputs.push_back(out);
    print_report(rep, as_json);
    if (!as_json)
        for (int j = 0; j < 4; ++j)
            std::printf("touch %d cap counts (r=0.2/0.1/0.05): %" PRIu64 " %" PRIu64 " %" PRIu64
                        "\n",
                        j + 1, h.cap_counts[j][0], h.cap_counts[j][1], h.cap_counts[j][2]);
    return rep.exit_code();
}

int cmd_density(int n, int grid, const std::string& out) {
    auto cfg = fg::make_polygon_config(n);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(grid);
    for (int i = 0; i < grid; ++i) {
        double t = -cfg.t_star + 2 * cfg.t_star * i / double(grid - 1);
        double phi = fg::angle_from_t(t);
        rows.push_back({fg::csv_double(t), fg::csv_double(fg::density_t(t, cfg).value),
                        fg::csv_double(phi), fg::csv_double(fg::density_angle(phi, cfg).value)});
    }
    fg::write_csv(out, "t,rho_t,phi,rho_phi", rows);
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chord-projection circle map: verification suites and data dumps"};
    app.require_subcommand(1);

    int n = 3, samples = 1000, steps = 50, digits = 16, max_len = 3, grid = 512, bins = 1024;
    int workers = 1, streams = 8;
    double tol = 1e-10, t0 = 0.1, a = 3.0;
    std::uint64_t seed = 0, sphere_seed = 42, iterations = 1000000, burn_in = 1000;
    bool oriented = false, exact = false, as_json = false;
    std::string out;

    auto* verify = app.add_subcommand("verify", "run the analytic identity suites");
    verify->add_option("--n", n, "polygon sides")->required()->check(CLI::Range(3, 64));
    verify->add_option("--samples", samples, "sample count per suite");
    verify->add_option("--tol", tol, "tolerance for the sampled suites");
    verify->add_option("--seed", seed, "sampling seed");
    verify->add_flag("--json", as_json, "machine-readable report");

    auto* orbit = app.add_subcommand("orbit", "dump an orbit as CSV");
    orbit->add_option("--n", n, "polygon sides")->required()->check(CLI::Range(3, 64));
    orbit->add_option("--t0", t0, "starting point")->required();
    orbit->add_option("--steps", steps, "iteration count");
    orbit->add_flag("--oriented", oriented, "use the oriented chart on [0, tan(pi/n)]");
    orbit->add_option("--out", out, "output CSV path")->default_val("orbit.csv");

    auto* encode = app.add_subcommand("encode", "branch-symbol expansion of a point");
    encode->add_option("--n", n, "polygon sides")->required()->check(CLI::Range(3, 64));
    encode->add_option("--t0", t0, "point to encode")->required();
    encode->add_option("--digits", digits, "symbols to emit");

    auto* periodic = app.add_subcommand("periodic", "enumerate periodic orbits by word");
    periodic->add_option("--n", n, "polygon sides")->required()->check(CLI::Range(3, 64));
    periodic->add_option("--max-len", max_len, "maximum word length")->check(CLI::Range(1, 8));
    periodic->add_flag("--oriented", oriented, "oriented chart");
    periodic->add_flag("--exact", exact, "integer-matrix certification (oriented n=4)");
    periodic->add_flag("--json", as_json, "machine-readable report");

    auto* triangle = app.add_subcommand("triangle", "generic-triangle family residuals");
    triangle->add_option("--a", a, "family parameter")->required();
    triangle->add_option("--samples", samples, "sample count");
    triangle->add_option("--tol", tol, "tolerance");
    triangle->add_option("--seed", seed, "sampling seed");
    triangle->add_flag("--json", as_json, "machine-readable report");

    auto* sphere = app.add_subcommand("sphere", "tetrahedron map Monte-Carlo histogram");
    sphere->add_option("--iterations", iterations, "total iterations");
    sphere->add_option("--bins", bins, "bin count (perfect square)");
    sphere->add_option("--burn-in", burn_in, "discarded iterations");
    sphere->add_option("--seed", sphere_seed, "stream seed");
    sphere->add_option("--workers", workers, "worker threads")->check(CLI::Range(1, 64));
    sphere->add_option("--streams", streams, "independent orbit streams")->check(CLI::Range(1, 256));
    sphere->add_option("--out", out, "output CSV path")->default_val("sphere.csv");
    sphere->add_flag("--json", as_json, "machine-readable report");

    auto* density = app.add_subcommand("density", "dump density samples for plotting");
    density->add_option("--n", n, "polygon sides")->required()->check(CLI::Range(3, 64));
    density->add_option("--grid", grid, "grid points")->check(CLI::Range(2, 1000000));
    density->add_option("--out", out, "output CSV path")->default_val("density.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(n, samples, tol, seed, as_json);
        if (orbit->parsed()) return cmd_orbit(n, t0, steps, oriented, out);
        if (encode->parsed()) return cmd_encode(n, t0, digits);
        if (periodic->parsed()) return cmd_periodic(n, max_len, oriented, exact, as_json);
        if (triangle->parsed()) return cmd_triangle(a, samples, tol, seed, as_json);
        if (sphere->parsed())
            return cmd_sphere(iterations, bins, burn_in, sphere_seed, workers, streams, out,
                              as_json);
        if (density->parsed()) return cmd_density(n, grid, out);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "argument error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "argument error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "argument error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
