#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int runTool(const std::string& args) {
  std::string cmd = std::string(DOLWIT_BIN) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json slurpJson(const fs::path& p) { return json::parse(slurp(p)); }

const fs::path kSrc = SRC_DIR;

}  // namespace

TEST_CASE("verify-lemmas: report, exit code, reproducibility") {
  fs::path out = fs::temp_directory_path() / "dolwit_cli_lemmas";
  fs::remove_all(out);
  std::string cfg = (kSrc / "configs/verify_lemmas.json").string();
  // shrink the lattice for speed via a local config
  fs::path localCfg = fs::temp_directory_path() / "lemmas_cfg.json";
  {
    std::ofstream o(localCfg);
    o << R"({"bounds": {"m_max": 2, "weight_max": 2, "dim_e": 1}})";
  }
  REQUIRE(runTool("verify-lemmas --config " + localCfg.string() + " --out " + out.string()) == 0);

  json rep = slurpJson(out / "lemmas.json");
  CHECK(rep.at("schema_version") == 1);
  CHECK(rep.at("passed") == true);
  REQUIRE(rep.at("lattice").size() == 2);
  CHECK(rep["lattice"][0]["dim_invariants"] == 5);
  CHECK(rep["lattice"][1]["dim_kernel"] == 0);  // (m=2, weight=2)

  // byte-reproducible on re-run
  std::string first = slurp(out / "lemmas.json");
  REQUIRE(runTool("verify-lemmas --config " + localCfg.string() + " --out " + out.string()) == 0);
  CHECK(first == slurp(out / "lemmas.json"));
}

TEST_CASE("density: csv shape and deterministic output") {
  fs::path out = fs::temp_directory_path() / "dolwit_cli_density";
  fs::remove_all(out);
  fs::path cfg = fs::temp_directory_path() / "density_cfg.json";
  {
    std::ofstream o(cfg);
    o << R"({"manifold": ")" << (kSrc / "configs/manifolds/flat_sin.json").string()
      << R"(", "grid": 16})";
  }
  REQUIRE(runTool("density --config " + cfg.string() + " --out " + out.string()) == 0);

  std::string csv = slurp(out / "density.csv");
  long rows = std::count(csv.begin(), csv.end(), '\n');
  CHECK(rows == 16 * 16 + 1);  // header + one line per grid point

  json dens = slurpJson(out / "density.json");
  CHECK(dens.at("schema_version") == 1);
  CHECK(std::abs(dens.at("integral").get<double>()) < 1e-10);

  std::string first = csv;
  REQUIRE(runTool("density --config " + cfg.string() + " --out " + out.string()) == 0);
  CHECK(first == slurp(out / "density.csv"));
}

TEST_CASE("compare: gates drive the exit code") {
  fs::path out = fs::temp_directory_path() / "dolwit_cli_compare";
  fs::remove_all(out);
  fs::path cfg = fs::temp_directory_path() / "compare_cfg.json";
  {
    std::ofstream o(cfg);
    o << R"({"manifold": ")" << (kSrc / "configs/manifolds/flat_sin.json").string() << R"(",
         "cutoff": 8, "grid": 8,
         "t_grid": {"min": 5e-3, "max": 5e-2, "count": 12},
         "tolerances": {"density_max_err": 0.5}})";
  }
  REQUIRE(runTool("compare --config " + cfg.string() + " --out " + out.string()) == 0);
  json sum = slurpJson(out / "compare_summary.json");
  CHECK(sum.at("tolerances_passed") == true);
  CHECK(sum.at("index") == 0);
  CHECK(sum.contains("supertrace_fit"));

  // an unreachable tolerance must flip the exit code
  CHECK(runTool("compare --config " + cfg.string() + " --out " + out.string() +
                " --tolerance density_max_err=1e-12") == 1);

  // flags override config
  CHECK(runTool("compare --config " + cfg.string() + " --out " + out.string() +
                " --cutoff 1") == 2);  // cutoff below the data support is rejected
}

TEST_CASE("bad inputs surface as errors") {
  CHECK(runTool("density --config /nonexistent.json") == 2);
  CHECK(runTool("density") == 2);  // no manifold configured
}
