// End-to-end checks of the fg command-line tool: exit codes, output formats,
// and byte-level determinism. Invoked by ctest with the binary path as argv[1].

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

int failures = 0;
std::string fg_bin;

void check(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

int run(const std::string& args, const std::string& stdout_path = "/dev/null") {
    std::string cmd = fg_bin + " " + args + " > " + stdout_path + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_checks <path-to-fg>\n");
        return 2;
    }
    fg_bin = argv[1];
    const std::string tmp = "/tmp/fg_cli_checks";
    if (std::system(("mkdir -p " + tmp).c_str()) != 0) {
        std::fprintf(stderr, "cannot create %s\n", tmp.c_str());
        return 2;
    }

    check(run("verify --n 5 --samples 500 --tol 1e-10") == 0, "verify n=5 exits 0");
    check(run("verify --n 4 --samples 500 --tol 1e-10") == 0, "verify n=4 exits 0");
    check(run("verify --n 3 --tol 1e-30") == 1, "unreachable tolerance exits 1");
    check(run("verify --n 2") == 2, "n below 3 exits 2");
    check(run("verify") == 2, "missing required option exits 2");
    check(run("nonsense") == 2, "unknown subcommand exits 2");
    check(run("sphere --iterations 1000 --bins 1000 --out " + tmp + "/h.csv") == 2,
          "non-square bin count exits 2");

    // verify --json produces the report schema, byte-identical across runs
    {
        std::string out = tmp + "/verify.json";
        std::string out2 = tmp + "/verify2.json";
        check(run("verify --n 6 --samples 200 --json", out) == 0, "verify --json exits 0");
        check(run("verify --n 6 --samples 200 --json", out2) == 0, "verify --json rerun exits 0");
        check(slurp(out) == slurp(out2), "verify --json byte-identical across runs");
        auto j = nlohmann::json::parse(slurp(out));
        bool shape = j.contains("command") && j.contains("params") && j.contains("checks") &&
                     j.contains("outputs") && j["command"] == "verify";
        bool checks_ok = !j["checks"].empty();
        for (const auto& c : j["checks"])
            checks_ok = checks_ok && c.contains("name") && c.contains("residual") &&
                        c.contains("tol") && c.contains("pass") && c["pass"].get<bool>();
        check(shape && checks_ok, "verify --json matches the report schema");
    }

    // orbit CSV: header, shape, determinism
    {
        std::string csv1 = tmp + "/orbit1.csv", csv2 = tmp + "/orbit2.csv";
        check(run("orbit --n 4 --t0 0.3 --steps 50 --out " + csv1) == 0, "orbit exits 0");
        check(run("orbit --n 4 --t0 0.3 --steps 50 --out " + csv2) == 0, "orbit rerun exits 0");
        std::string body = slurp(csv1);
        check(body.rfind("step,t,symbol\n", 0) == 0, "orbit CSV header");
        check(body == slurp(csv2), "orbit CSV byte-identical across runs");
        check(run("orbit --n 4 --t0 0.6 --steps 20 --oriented --out " + tmp + "/orbit3.csv") == 0,
              "oriented orbit exits 0");
    }

    // encode and density
    check(run("encode --n 3 --t0 0.3 --digits 12") == 0, "encode exits 0");
    {
        std::string csv = tmp + "/density.csv";
        check(run("density --n 5 --grid 64 --out " + csv) == 0, "density exits 0");
        std::string body = slurp(csv);
        check(body.rfind("t,rho_t,phi,rho_phi\n", 0) == 0, "density CSV header");
        check(body.find("inf") != std::string::npos,
              "density CSV shows inf at the tangency endpoints");
    }

    // periodic --json: array of reports with integer polynomials in exact mode
    {
        std::string out = tmp + "/periodic.json";
        check(run("periodic --n 4 --oriented --exact --max-len 3 --json", out) == 0,
              "periodic --json exits 0");
        auto j = nlohmann::json::parse(slurp(out));
        bool ok = j.is_array() && !j.empty();
        bool cycle = false;
        for (const auto& r : j) {
            ok = ok && r.contains("word") && r.contains("point") && r.contains("circle_period") &&
                 r.contains("min_poly") && r["min_poly"].size() == 3;
            if (r["word"].size() == 2) {
                double pt = r["point"].get<double>();
                if (std::abs(pt) < 1e-9 || std::abs(pt - 1.0) < 1e-9) cycle = true;
            }
        }
        check(ok, "periodic --json is an array of certified reports");
        check(cycle, "periodic --json contains the rational 2-cycle");
        check(run("periodic --n 5 --oriented --exact --max-len 2") == 2,
              "exact mode outside n=4 exits 2");
    }

    // triangle residual suite
    check(run("triangle --a 3 --samples 500") == 0, "triangle a=3 exits 0");
    check(run("triangle --a 2.2 --samples 500") == 0, "triangle a=2.2 exits 0");
    check(run("triangle --a 0.5") == 2, "inadmissible triangle parameter exits 2");

    // sphere: CSV shape and worker-count independence at the byte level
    {
        std::string c1 = tmp + "/s1.csv", c8 = tmp + "/s8.csv";
        check(run("sphere --iterations 200000 --bins 256 --burn-in 500 --seed 42 --workers 1 "
                  "--out " + c1) == 0,
              "sphere single worker exits 0");
        check(run("sphere --iterations 200000 --bins 256 --burn-in 500 --seed 42 --workers 8 "
                  "--out " + c8) == 0,
              "sphere eight workers exits 0");
        std::string b1 = slurp(c1);
        check(b1.rfind("band,azimuth_bin,count,bin_area\n", 0) == 0, "sphere CSV header");
        check(b1 == slurp(c8), "sphere CSV identical for 1 and 8 workers");

        std::string out = tmp + "/sphere.json";
        check(run("sphere --iterations 200000 --bins 256 --burn-in 500 --seed 7 --json --out " +
                  tmp + "/s9.csv", out) == 0,
              "sphere --json exits 0");
        auto j = nlohmann::json::parse(slurp(out));
        check(j.contains("checks") && j["outputs"].size() == 1, "sphere --json report schema");
    }

    if (failures) {
        std::printf("%d CLI check(s) failed\n", failures);
        return 1;
    }
    std::printf("all CLI checks passed\n");
    return 0;
}
