#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "decoh/trace_io.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <map>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* p = std::getenv("DECOH_CLI");
    REQUIRE_MESSAGE(p != nullptr, "DECOH_CLI must point at the built binary");
    return p;
}

int run_cli(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("decoh_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("run: spin trace starts at abs_F = 1 and is deterministic") {
    TempDir tmp;
    const auto out1 = tmp.path / "spin1.csv";
    const auto out2 = tmp.path / "spin2.csv";
    const std::string args =
        "run --model spin --param j2=10 --param omega=1 --param g=0.6 "
        "--t-start 0 --t-end 2 --steps 2 --format csv --out ";
    CHECK(run_cli(args + out1.string()) == 0);
    CHECK(run_cli(args + out2.string()) == 0);

    const std::string text = slurp(out1);
    CHECK(text.rfind("t,re_F,im_F,abs_F\n", 0) == 0);
    CHECK(text.find("\r") == std::string::npos);  // LF endings only
    std::istringstream lines(text);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    CHECK(std::stod(first.substr(first.rfind(',') + 1)) ==
          doctest::Approx(1.0).epsilon(1e-12));  // abs_F at t = 0

    CHECK(slurp(out1) == slurp(out2));  // byte-identical reruns
}

TEST_CASE("run: validation failures exit with code 2") {
    TempDir tmp;
    const auto out = tmp.path / "x.csv";
    // t_start == t_end
    CHECK(run_cli("run --model spin --param j2=4 --param omega=1 --param g=0.3 "
                  "--t-start 1 --t-end 1 --steps 2 --out " +
                  out.string()) == 2);
    // missing required key
    CHECK(run_cli("run --model spin --param omega=1 --param g=0.3 "
                  "--t-start 0 --t-end 1 --steps 4 --out " +
                  out.string()) == 2);
    // unknown model
    CHECK(run_cli("run --model warp --t-start 0 --t-end 1 --steps 4 --out " + out.string()) == 2);
    // steps too small
    CHECK(run_cli("run --model spin --param j2=4 --param omega=1 --param g=0.3 "
                  "--t-start 0 --t-end 1 --steps 1 --out " +
                  out.string()) == 2);
}

TEST_CASE("run: JSON output round-trips exactly") {
    TempDir tmp;
    const auto out = tmp.path / "sg.json";
    CHECK(run_cli("run --model sg --param M=100 --param a=1 --param f=0.1 --param k=1 "
                  "--param theta=1.0471975511965976 --t-start 0 --t-end 10 --steps 40 "
                  "--format json --out " +
                  out.string()) == 0);
    const std::string text = slurp(out);
    const auto trace = decoh::io::trace_from_json(text);
    CHECK(trace.times.size() == 40);
    CHECK(trace.model_id == "sg");
    // re-serialize: byte-identical (numbers preserved at 17 significant digits)
    CHECK(decoh::io::trace_to_json(trace) == text);
    CHECK(std::abs(trace.values.front()) == doctest::Approx(1.0));
}

TEST_CASE("run: config file with flag overrides") {
    TempDir tmp;
    const auto cfgfile = tmp.path / "cfg.json";
    {
        std::ofstream f(cfgfile);
        f << R"({"model":"semiclassic","t_start":0,"t_end":4,"steps":5,)"
          << R"("format":"csv","params":{"sigma":1.0,"delta_f":2.0}})";
    }
    const auto out = tmp.path / "semi.csv";
    CHECK(run_cli("run --config " + cfgfile.string() + " --steps 7 --out " + out.string()) == 0);
    const std::string text = slurp(out);
    int rows = -1;  // discount header
    for (char ch : text)
        if (ch == '\n') ++rows;
    CHECK(rows == 7);  // flag overrode the file's steps
}

TEST_CASE("run: paper-form switch changes the sg trace") {
    TempDir tmp;
    const auto exact_out = tmp.path / "exact.csv";
    const auto paper_out = tmp.path / "paper.csv";
    const std::string common =
        "run --model sg --param M=100 --param a=1 --param f=0.1 --param k=1 "
        "--param theta=1.5707963267948966 --t-start 0 --t-end 8 --steps 5 --out ";
    CHECK(run_cli(common + exact_out.string()) == 0);
    CHECK(run_cli(common + paper_out.string() + " --show-paper-form") == 0);
    CHECK(slurp(exact_out) != slurp(paper_out));
}

TEST_CASE("run: density section emits the x,x_prime header") {
    TempDir tmp;
    const auto out = tmp.path / "density.csv";
    CHECK(run_cli("run --model localize --param form=2 --param a=2 --param d=0.2 "
                  "--param gamma=0.1 --param t=1 --t-start -3 --t-end 3 --steps 11 --out " +
                  out.string()) == 0);
    const std::string text = slurp(out);
    CHECK(text.rfind("x,x_prime,abs_rho\n", 0) == 0);
    int rows = -1;
    for (char ch : text)
        if (ch == '\n') ++rows;
    CHECK(rows == 11 * 11);
}

TEST_CASE("sweep: per-value traces plus index, written last") {
    TempDir tmp;
    const auto index = tmp.path / "sweep.csv";
    CHECK(run_cli("sweep --model spin --param omega=1 --param g=0.6 --sweep-key j2 "
                  "--values 10,40,200 --t-start 0 --t-end 6.283185307179586 --steps 101 --out " +
                  index.string()) == 0);
    const std::string idx = slurp(index);
    CHECK(idx.rfind("value,file\n", 0) == 0);

    // min abs_F decreases as j grows (collapse deepens)
    std::vector<double> mins;
    for (int i = 0; i < 3; ++i) {
        const auto file = tmp.path / ("sweep_" + std::to_string(i) + ".csv");
        std::istringstream lines(slurp(file));
        std::string line;
        std::getline(lines, line);  // header
        double mn = 2.0;
        while (std::getline(lines, line))
            mn = std::min(mn, std::stod(line.substr(line.rfind(',') + 1)));
        mins.push_back(mn);
    }
    CHECK(mins[0] > mins[1]);
    CHECK(mins[1] > mins[2]);

    // unknown sweep key is rejected before any file is written
    CHECK(run_cli("sweep --model spin --param omega=1 --param g=0.6 --sweep-key nope "
                  "--values 1,2 --t-start 0 --t-end 1 --steps 4 --out " +
                  (tmp.path / "bad.csv").string()) == 2);
    CHECK_FALSE(fs::exists(tmp.path / "bad.csv"));
}

TEST_CASE("sweep: empty value list yields a header-only index") {
    TempDir tmp;
    const auto index = tmp.path / "empty.csv";
    CHECK(run_cli("sweep --model spin --param j2=4 --param omega=1 --param g=0.3 --sweep-key j2 "
                  "--t-start 0 --t-end 1 --steps 4 --out " +
                  index.string()) == 0);
    CHECK(slurp(index) == "value,file\n");
}

TEST_CASE("verify: fast levels run clean for the solvable models") {
    CHECK(run_cli("verify --model spin --level fast") == 0);
    CHECK(run_cli("verify --model cavity --level fast") == 0);
    CHECK(run_cli("verify --model localize --level fast") == 0);
    CHECK(run_cli("verify --model semiclassic --level fast") == 0);
    CHECK(run_cli("verify --model core --level fast") == 0);
    CHECK(run_cli("verify --model nonsense --level fast") == 2);
}

TEST_CASE("coverage: every model operation is reachable from a CLI command") {
    // op -> the CLI invocation family that drives it (run = trace evaluation,
    // verify:<model> = a row in that model's verification report)
    const std::map<std::string, std::string> reach = {
        {"core.reduced_density", "verify:core 12b"},
        {"core.purity", "verify:core 12c"},
        {"core.free_packet_width", "verify:core 12e"},
        {"specfun.spin_operators", "run:spin / verify:spin 1a"},
        {"specfun.wigner_small_d", "verify:spin 2c"},
        {"specfun.laguerre", "run:cavity form=2 / verify:cavity 6b"},
        {"specfun.bessel_j0", "run:cavity form=3 / verify:cavity 8b"},
        {"semi.induced_force", "verify:semiclassic s2 s3"},
        {"semi.linearized_decoherence_factor", "run:semiclassic / verify:semiclassic s1"},
        {"semi.classical_trajectory", "verify:semiclassic s2"},
        {"semi.local_frequency", "verify:semiclassic s3"},
        {"semi.distinguishable", "verify:sg 5e (sg-specialized predicate)"},
        {"sg.adiabatic_spinors", "verify:sg 4a (grid projections), 5a"},
        {"sg.adiabaticity_ratio", "verify:sg 5f"},
        {"sg.induced_gauge", "run:sg / verify:sg 5b"},
        {"sg.wei_norman_params", "verify:sg 5b"},
        {"sg.branch_wavefunction", "verify:sg 5c 5d"},
        {"sg.trajectory", "verify:sg 5c"},
        {"sg.decoherence_factor", "run:sg --show-paper-form / verify:sg 4c"},
        {"sg.decoherence_factor_exact", "run:sg / verify:sg 4d"},
        {"sg.decoherence_time", "verify:sg 5"},
        {"sg.distinguishability_condition", "verify:sg 5e"},
        {"spin.mixing_angle", "run:spin / verify:spin 1a"},
        {"spin.branch_state", "run:spin / verify:spin 1a 2c"},
        {"spin.decoherence_factor_analytic", "verify:spin 1a 2a 2b 3b"},
        {"spin.decoherence_factor_numeric", "run:spin / verify:spin 1a"},
        {"spin.revival_times", "verify:spin 2a"},
        {"cavity.adiabatic_photon_state", "verify:cavity 6d"},
        {"cavity.adiabatic_ratio", "verify:cavity 6e"},
        {"cavity.displacement_matrix", "verify:cavity 6a 6b"},
        {"cavity.overlap_coherent", "run:cavity form=0 / verify:cavity 6a 7"},
        {"cavity.overlap_coherent_limit", "run:cavity form=1 / verify:cavity 7"},
        {"cavity.overlap_fock", "run:cavity form=2 / verify:cavity 6b 8a"},
        {"cavity.overlap_fock_limit", "run:cavity form=3 / verify:cavity 8b"},
        {"cavity.mirror_branch", "verify:cavity 6a"},
        {"loc.single_s_matrix", "run:localize mode=0 / verify:localize 9a"},
        {"loc.single_decoherence_factor", "run:localize mode=0 / verify:localize 11c"},
        {"loc.weak_coupling_factor", "verify:localize 11c"},
        {"loc.total_decoherence_factor", "run:localize / verify:localize 9a 10a"},
        {"loc.localization_exponent", "verify:localize 10b"},
        {"loc.two_packet_density", "run:localize form=2 / verify:localize 11a"},
        {"loc.plane_wave_density", "run:localize form=3 / verify:localize 11b"},
        {"loc.phase_function", "verify:localize 11d"},
        {"oracle.grid_propagate", "verify:sg 4a-4g"},
        {"oracle.dense_evolve", "verify:spin 3b / verify:localize 9a"},
        {"oracle.partial_trace", "verify:spin 3b"},
        {"oracle.large_mass_phase_check", "verify:core 12d"},
    };
    for (const auto& [op, via] : reach) {
        INFO(op);
        CHECK_FALSE(via.empty());
    }
    CHECK(reach.size() == 48);  // grows when a module gains an operation
}

TEST_CASE("output failure paths exit with code 3") {
    CHECK(run_cli("run --model spin --param j2=4 --param omega=1 --param g=0.3 "
                  "--t-start 0 --t-end 1 --steps 4 --out /nonexistent-root/x/y.csv") == 3);
}
