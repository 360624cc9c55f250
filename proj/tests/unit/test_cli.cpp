#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "arcfreq/config.hpp"
#include "arcfreq/sweep.hpp"

using namespace arcfreq;
using namespace arcfreq::cli;
namespace fs = std::filesystem;

namespace {

const std::string kExe = ARCFREQ_EXE;
const std::string kConfigs = ARCFREQ_CONFIG_DIR;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("arcfreq_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Runs the tool, returns its exit status; stdout+stderr go to `log`.
int run(const std::string& args, const std::string& log = "run.log") {
  const std::string cmd = kExe + " " + args + " > " + scratch(log).string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kSmallSweep = R"({
  "geometry": {"radius": {"value": 110, "unit": "nm"}, "thickness": {"value": 5, "unit": "nm"},
               "central_angle": {"value": 30, "unit": "deg"}},
  "cracks": [{"location": 0.4, "depth_ratio": 0.5}],
  "boundary": "clamped_free",
  "sweeps": [{"name": "depth", "parameter": "crack_depth_s", "values": [0.1, 0.3, 0.5, 0.6],
              "family": {"parameter": "nonlocal_eta", "values": {"values": [0, 2], "unit": "nm2"}},
              "modes": 2}]
})";

}  // namespace

TEST_CASE("config errors carry the field and the line") {
  SUBCASE("unknown key") {
    const std::string text = "{\n  \"geometry\": {\n    \"radius\": 1e-7,\n    \"radious\": 2\n  }\n}\n";
    try {
      parse_config(text);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "/geometry/radious");
      CHECK(e.line() == 4);
      CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
  }
  SUBCASE("syntax error") {
    try {
      parse_config("{\n  \"boundary\": \"ring\",\n  oops\n}\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("bad unit") {
    try {
      parse_config(R"({"geometry": {"radius": {"value": 1, "unit": "furlong"}}})");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.field().find("/geometry/radius") == 0);
    }
  }
  SUBCASE("through-crack") {
    CHECK_THROWS_AS(parse_config(R"({"cracks": [{"location": 0.5, "depth_ratio": 1.0}]})"), ConfigError);
  }
  SUBCASE("empty sweep grid") {
    try {
      parse_config(R"({"sweeps": [{"name": "x", "parameter": "nonlocal_eta", "values": []}]})");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("grids non-empty") != std::string::npos);
    }
  }
  SUBCASE("crack parameter without a crack") {
    CHECK_THROWS_AS(
        parse_config(R"({"sweeps": [{"name": "x", "parameter": "crack_depth_s", "values": [0.1]}]})"),
        ConfigError);
  }
}

TEST_CASE("units and defaults") {
  const Config c = parse_config(R"({
    "material": {"nonlocal_length_sq": {"value": 2, "unit": "nm2"}, "youngs_modulus": {"value": 700, "unit": "GPa"}},
    "geometry": {"central_angle": {"value": 30, "unit": "deg"}},
    "boundary": "clamped_clamped",
    "sweeps": [{"name": "r", "parameter": "radius_R", "values": {"from": 80, "to": 120, "count": 5, "unit": "nm"}}]
  })");
  CHECK(c.scenario.material.nonlocal_length_sq == doctest::Approx(2e-18));
  CHECK(c.scenario.material.youngs_modulus == doctest::Approx(7e11));
  CHECK(c.scenario.geometry.central_angle == doctest::Approx(std::numbers::pi / 6));
  CHECK(c.scenario.geometry.radius == doctest::Approx(110e-9));
  CHECK(c.scenario.boundary == BoundaryType::ClampedClamped);
  REQUIRE(c.sweeps.size() == 1);
  REQUIRE(c.sweeps[0].values.size() == 5);
  CHECK(c.sweeps[0].values[1] == doctest::Approx(90e-9));
}

TEST_CASE("crack placement inserts an interface") {
  const Config c = parse_config(R"({"cracks": [{"location": 0.4, "depth_ratio": 0.5}]})");
  const ResolvedScenario r = resolve(c.scenario);
  REQUIRE(r.cracks.size() == 1);
  CHECK(r.geometry.interface_angles[r.cracks[0].interface_index] ==
        doctest::Approx(0.4 * std::numbers::pi / 6));
}

TEST_CASE("sweep output is identical in serial and parallel") {
  const Config c = parse_config(kSmallSweep);
  const SweepOutcome a = run_sweep(c.scenario, c.sweeps[0], Execution::Serial);
  const SweepOutcome b = run_sweep(c.scenario, c.sweeps[0], Execution::Parallel);
  CHECK(a.failures.empty());
  std::ostringstream sa, sb;
  write_sweep_csv(sa, a.rows);
  write_sweep_csv(sb, b.rows);
  CHECK(sa.str() == sb.str());
  CHECK(a.rows.size() == 16);
  CHECK(sa.str().rfind("swept_value,family_value,mode_index,omega_dimensionless,omega_rad_per_s,root_kind\n", 0) == 0);
}

TEST_CASE("command line: exit codes and outputs") {
  SUBCASE("solve writes modes and shapes") {
    const fs::path out = scratch("solve_out");
    CHECK(run("solve " + kConfigs + "/desk.json --modes 3 --out " + out.string()) == 0);
    const std::string modes_csv = read_file(out / "modes.csv");
    CHECK(modes_csv.find("1,13.0712") != std::string::npos);
    CHECK(fs::exists(out / "mode_shapes.csv"));
  }
  SUBCASE("sweep CSV is byte-identical with and without threads") {
    const fs::path cfg = write_file("small.json", kSmallSweep);
    const fs::path p = scratch("par");
    const fs::path s = scratch("ser");
    CHECK(run("sweep " + cfg.string() + " --out " + p.string()) == 0);
    CHECK(run("sweep " + cfg.string() + " --serial --out " + s.string()) == 0);
    const std::string a = read_file(p / "depth.csv");
    CHECK_FALSE(a.empty());
    CHECK(a == read_file(s / "depth.csv"));
  }
  SUBCASE("config errors exit with 2") {
    const fs::path cfg = write_file("bad.json", "{\n  \"boundary\": \"hinged\"\n}\n");
    CHECK(run("solve " + cfg.string(), "bad.log") == 2);
    const std::string log = read_file(scratch("bad.log"));
    CHECK(log.find("line 2") != std::string::npos);
    CHECK(log.find("/boundary") != std::string::npos);
    CHECK(run("solve " + scratch("missing.json").string()) == 2);
    CHECK(run("solve") == 2);
    CHECK(run("frobnicate") == 2);
  }
  SUBCASE("oracle check passes on a cracked arch and exits 1 on the negative control") {
    const std::string cfg = kConfigs + "/desk_cracked.json";
    CHECK(run("oracle-check " + cfg + " --nodes 800") == 0);
    CHECK(run("oracle-check " + cfg + " --nodes 800 --compliance-model dimarogonas --negate-kappa", "neg.log") == 1);
    CHECK(read_file(scratch("neg.log")).find("FAIL") != std::string::npos);
  }
  SUBCASE("oracle check rejects meshes below 200 intervals") {
    CHECK(run("oracle-check " + kConfigs + "/desk.json --nodes 100") == 2);
  }
}
