#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "semigrowth/config.hpp"
#include "semigrowth/csv.hpp"
#include "semigrowth/errors.hpp"
#include "semigrowth/pipeline.hpp"

using namespace semigrowth;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"(model:
  type: lattice
  profile: power
  exponent: 0.5
checks: [sandwich_62]
)";

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "cfg.yaml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("semigrowth_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("minimal config takes the defaults") {
    const auto c = parse_config(kMinimal);
    CHECK(c.model.type == "lattice");
    CHECK(c.model.k_max == 1e10);
    CHECK(c.t_grid == GridSpec{1e-5, 1e-1, 16});
    CHECK(c.s_grid == GridSpec{10.0, 1e8, 16});
    REQUIRE(c.checks.size() == 1);
    CHECK(c.checks[0].id == CheckId::sandwich_62);
    CHECK(c.output_dir == "out");
  }

  TEST_CASE("round trip through the canonical echo") {
    const std::string full = R"(model:
  type: union
  members:
    - {type: lattice, profile: log, scale: 2, k_max: inf}
    - {type: finite, points: [[-1, 0.5], [-3.25, -7]]}
  imag_bound: 2
grids:
  t: {min: 1.0e-4, max: 0.1, per_decade: 8}
  s: {min: 10, max: 1.0e9, per_decade: 12}
  eta: {min: 20, max: 3.0e6, per_decade: 4}
checks:
  - banach_upper
  - {id: sandwich_62, epsilon: 0.05, curve_scale: 1.5}
  - {id: lower_41b, c: 0.25}
  - {id: resolvent_41a, c_grid: [0.125, 0.5]}
output: {dir: results/run1}
seed: 77
)";
    const auto parsed = parse_config(full);
    REQUIRE(parsed.checks.size() == 4);
    CHECK(parsed.checks[1].id == CheckId::sandwich_62);
    CHECK(parsed.checks[1].epsilon == 0.05);
    CHECK(parsed.checks[1].curve_scale == 1.5);
    CHECK(parsed.checks[2].c == 0.25);
    CHECK(parsed.checks[3].c_grid == std::vector<double>{0.125, 0.5});
    REQUIRE(parsed.model.members.size() == 2);
    CHECK(parsed.model.members[0].k_max == std::numeric_limits<double>::infinity());
    CHECK(parsed.model.members[1].points[1] == std::pair<double, double>{-3.25, -7.0});
    CHECK(parsed.seed == 77);
    CHECK(parsed.output_dir == "results/run1");
    for (const std::string& text : {std::string(kMinimal), full}) {
      const auto a = parse_config(text);
      const auto b = parse_config(echo_config(a));
      CHECK(a == b);
      CHECK(echo_config(a) == echo_config(b));
    }
  }

  TEST_CASE("validation errors carry position and field") {
    const auto inverted = error_of(R"(model: {type: lattice}
grids:
  t: {min: 0.5, max: 0.1}
)");
    CHECK(inverted.find("grids.t.min") != std::string::npos);
    CHECK(inverted.find("cfg.yaml:3:") != std::string::npos);

    const auto unknown = error_of(R"(model: {type: lattice}
checks: [thm_99]
)");
    CHECK(unknown.find("thm_99") != std::string::npos);
    CHECK(unknown.find("sandwich_62") != std::string::npos);
    CHECK(unknown.find("holomorphic_classify") != std::string::npos);

    CHECK(error_of("model: {type: lattice, colour: red}\n").find("model.colour") != std::string::npos);
    CHECK(error_of("model: {type: spiral}\n").find("unknown model variant") != std::string::npos);
    CHECK(error_of("model: {type: lattice}\ngrids: {t: {per_decade: 2}}\n").find("at least 4") != std::string::npos);
    CHECK(error_of("model: {type: lattice}\nchecks: [hilbert_upper, hilbert_upper]\n").find("duplicate") !=
          std::string::npos);
    CHECK(error_of("model: [1, 2\n").find("malformed") != std::string::npos);
    CHECK(error_of("model: {type: lattice, profile: log}\n").find("model") != std::string::npos);
    CHECK(error_of("model: {type: lattice, profile: log, imag_bound: 2}\n").empty());
  }

  TEST_CASE("csv formatting") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(csv_text({"a", "b"}, {{1.0, 2.5}}) == "a,b\n1,2.5\n");
  }
}

TEST_SUITE("pipeline") {
  TEST_CASE("square-root lattice with three checks") {
    auto cfg = parse_config(R"(model: {type: lattice, profile: power, exponent: 0.5, k_max: inf}
grids:
  t: {min: 1.0e-4, max: 0.1, per_decade: 8}
  s: {min: 10, max: 1.0e12, per_decade: 8}
checks: [sandwich_62, hilbert_upper, lower_41b]
)");
    const auto r = run_pipeline(cfg);
    REQUIRE(r.checks.size() == 3);
    CHECK(r.checks[0].id == CheckId::sandwich_62);
    CHECK(r.checks[0].verdict() == Verdict::pass);
    for (const auto& c : r.checks) CHECK(c.report.has_value());
    CHECK(r.curve_certified);
  }

  TEST_CASE("empty check list") {
    auto cfg = parse_config("model: {type: lattice}\ngrids: {t: {min: 1.0e-3, max: 0.1}}\n");
    const auto r = run_pipeline(cfg);
    CHECK(r.checks.empty());
    CHECK(r.exit_code() == 0);
    const auto doc = nlohmann::json::parse(report_document(r));
    REQUIRE(doc["config"].is_string());
    CHECK(parse_config(doc["config"].get<std::string>()) == cfg);
    CHECK(doc["checks"].empty());
  }

  TEST_CASE("hypothesis failures are recorded per check") {
    auto cfg = parse_config(R"(model: {type: lattice, profile: log, imag_bound: 2}
grids: {t: {min: 1.0e-3, max: 0.1}}
checks: [hilbert_upper, yosida_log]
)");
    const auto r = run_pipeline(cfg);
    REQUIRE(r.checks.size() == 2);
    CHECK(r.checks[0].error_kind == "hypothesis_unmet");
    CHECK_FALSE(r.checks[0].report.has_value());
    CHECK(r.checks[1].report.has_value());
    CHECK(r.exit_code() == 1);
  }

  TEST_CASE("outputs are complete and reproducible") {
    auto cfg = parse_config(R"(model: {type: lattice, profile: power, exponent: 0.5, k_max: inf}
grids:
  t: {min: 1.0e-4, max: 0.1, per_decade: 8}
  s: {min: 10, max: 1.0e12, per_decade: 8}
checks: [sandwich_62]
)");
    const auto dir1 = scratch("out1");
    const auto dir2 = scratch("out2");
    const auto files = emit_outputs(run_pipeline(cfg), dir1);
    emit_outputs(run_pipeline(cfg), dir2);
    CHECK(files.size() == 5);
    for (const char* name : {"growth.csv", "envelope.csv", "sandwich_62.csv", "report.json", "summary.txt"}) {
      REQUIRE(fs::exists(dir1 / name));
      CHECK(slurp(dir1 / name) == slurp(dir2 / name));
    }
    CHECK_FALSE(fs::exists(dir1 / ".staging"));
    const auto growth = slurp(dir1 / "growth.csv");
    CHECK(growth.rfind("t,norm_AT,truncation_bound\n", 0) == 0);
    CHECK(growth.find('\r') == std::string::npos);
    fs::remove_all(dir1);
    fs::remove_all(dir2);
  }

  TEST_CASE("unwritable targets fail before writing") {
    auto cfg = parse_config("model: {type: lattice}\ngrids: {t: {min: 1.0e-3, max: 0.1}}\nchecks: [hilbert_upper]\n");
    const auto report = run_pipeline(cfg);
    const auto base = scratch("blocker");
    fs::create_directories(base);
    const auto file = base / "plain";
    std::ofstream(file) << "x";
    CHECK_THROWS_AS(emit_outputs(report, file / "out"), IoError);
    CHECK(fs::is_regular_file(file));
    CHECK(std::distance(fs::directory_iterator(base), fs::directory_iterator{}) == 1);
    fs::remove_all(base);
  }
}
