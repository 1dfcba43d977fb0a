#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "cavdress_cli/runner.hpp"

using namespace cavdress;
using namespace cavdress::cli;
namespace fs = std::filesystem;

namespace {

RunSpec parse(std::vector<std::string> args) {
    args.insert(args.begin(), "cavdress");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    return parse_run_spec(static_cast<int>(argv.size()), argv.data());
}

fs::path scratch_dir() {
    auto dir = fs::temp_directory_path() / ("cavdress_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int tool(const std::string& args) {
    const std::string cmd = std::string(CAVDRESS_TOOL_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("parse: figures and evolve examples") {
    const auto fig = parse({"figures", "--which", "1"});
    CHECK(fig.command == Command::figures);
    CHECK(fig.figure == 1);
    CHECK(fig.time_grid.t_end == 15.0);

    const auto ev = parse({"evolve", "--omega-bar", "1.0", "--g", "0.5", "--delta", "0.1", "--xi", "0.6"});
    CHECK(ev.command == Command::evolve);
    REQUIRE(ev.delta.has_value());
    CHECK(*ev.delta == 0.1);
    CHECK(ev.config.delta() == doctest::Approx(0.1));
    CHECK(ev.superposition.xi == 0.6);
}

TEST_CASE("parse: errors") {
    CHECK_THROWS_AS(parse({"evolve", "--xi", "1.5"}), ValidationError);
    CHECK_THROWS_AS(parse({"evolve", "--no-such-flag"}), UsageError);
    CHECK_THROWS_AS(parse({"bogus"}), UsageError);
    CHECK_THROWS_AS(parse({}), UsageError);
    CHECK_THROWS_AS(parse({"evolve", "--g", "0.1", "--alpha-coupling"}), UsageError);
    CHECK_THROWS_AS(parse({"evolve", "--delta", "0.1", "--radius", "2"}), UsageError);
    CHECK_THROWS_AS(parse({"evolve", "--t-start", "5", "--t-end", "1"}), ValidationError);
    CHECK_THROWS_AS(parse({"evolve", "--which", "4"}), UsageError);
    CHECK_THROWS_AS(parse({"evolve", "--help"}), HelpRequested);
}

TEST_CASE("parse: alpha coupling and lowest-mode choice") {
    const auto s = parse({"classify", "--omega-bar", "2e11", "--alpha-coupling", "--delta", "0.016",
                          "--lowest-mode-shift", "half-pi"});
    CHECK(s.config.g == doctest::Approx(2e11 / 137.0));
    CHECK(s.lowest_mode == LowestModeShift::half_pi);
}

TEST_CASE("config file: keys, precedence and unknown keys") {
    const auto dir = scratch_dir();
    const auto good = dir / "good.cfg";
    std::ofstream(good) << "omega-bar=2.0\ng=0.3\nxi=0.25\n";
    const auto s = parse({"evolve", "--config", good.string(), "--g", "0.4"});
    CHECK(s.config.omega_bar == 2.0);
    CHECK(s.config.g == 0.4);
    CHECK(s.superposition.xi == 0.25);
    CHECK(s.config_file == good.string());

    const auto bad = dir / "bad.cfg";
    std::ofstream(bad) << "omega-bar=2.0\nunknown-key=1\n";
    CHECK_THROWS_AS(parse({"evolve", "--config", bad.string()}), UsageError);
    CHECK_THROWS_AS(parse({"evolve", "--config", (dir / "missing.cfg").string()}), IoError);
    fs::remove_all(dir);
}

TEST_CASE("run: byte-identical output across runs") {
    const auto dir = scratch_dir();
    for (const char* cmd : {"evolve", "continuum", "small-cavity", "compare"}) {
        std::vector<std::string> args{cmd, "--omega-bar", "1", "--g", "0.5", "--delta", "0.1",
                                      "--truncation", "300", "--small-truncation", "200",
                                      "--t-end", "10", "--n-points", "21"};
        auto a = parse(args);
        a.output_path = (dir / "a.csv").string();
        auto b = a;
        b.output_path = (dir / "b.csv").string();
        const auto ra = run(a);
        const auto rb = run(b);
        INFO(cmd << ": " << ra.failure_message);
        REQUIRE(ra.ok());
        REQUIRE(rb.ok());
        CHECK(ra.rows == 21);
        // the meta block carries no timestamps, so whole files compare equal
        CHECK(slurp(a.output_path) == slurp(b.output_path));
    }
    fs::remove_all(dir);
}

TEST_CASE("run: evolve output shape") {
    const auto dir = scratch_dir();
    auto s = parse({"evolve", "--omega-bar", "1", "--g", "0.5", "--delta", "0.2", "--truncation", "200",
                    "--n-points", "5"});
    s.output_path = (dir / "e.csv").string();
    const auto r = run(s);
    REQUIRE(r.ok());
    std::istringstream in(slurp(s.output_path));
    std::string line, header;
    while (std::getline(in, line)) {
        if (line.rfind("#", 0) != 0) {
            header = line;
            break;
        }
    }
    CHECK(header == "t,re_f00,im_f00,abs2_f00,rho00,rho11,re_rho10,im_rho10,impurity,method");
    CHECK(r.max_invariant_defect <= 1e-12);
    fs::remove_all(dir);
}

TEST_CASE("run: failures leave no partial file") {
    const auto dir = scratch_dir();
    auto s = parse({"evolve", "--omega-bar", "1", "--g", "0.5", "--delta", "10", "--truncation", "20000",
                    "--drop-eta-term", "--n-points", "5"});
    s.output_path = (dir / "x.csv").string();
    const auto r = run(s);
    CHECK(!r.ok());
    CHECK(exit_code(r) == 3);
    CHECK(!fs::exists(s.output_path));

    auto t = parse({"figures", "--which", "1"});
    t.output_path = (dir / "no_such_dir" / "y.csv").string();
    const auto rt = run(t);
    CHECK(exit_code(rt) == 4);
    fs::remove_all(dir);
}

TEST_CASE("exit codes of the installed tool") {
    const auto dir = scratch_dir();
    CHECK(tool("figures --which 1 --out " + (dir / "f.csv").string()) == 0);
    CHECK(fs::exists(dir / "f.csv"));
    CHECK(tool("evolve --xi 1.5") == 2);
    CHECK(tool("evolve --unknown") == 2);
    CHECK(tool("figures --which 1 --out " + (dir / "nope" / "f.csv").string()) == 4);
    CHECK(tool("classify --omega-bar 2e11 --alpha-coupling --delta 0.016 --out " + (dir / "c.csv").string()) == 0);
    const auto text = slurp(dir / "c.csv");
    CHECK(text.find("nondissipative") != std::string::npos);
    CHECK(tool("--help") == 0);
    fs::remove_all(dir);
}

TEST_CASE("exit code mapping") {
    CHECK(exit_code(ErrorCategory::usage) == 2);
    CHECK(exit_code(ErrorCategory::validation) == 2);
    CHECK(exit_code(ErrorCategory::numerical) == 3);
    CHECK(exit_code(ErrorCategory::io) == 4);
    CHECK(exit_code(RunReport{}) == 0);
}
