// Config-driven workbench runner: exact lemma verification, analytic index
// densities, spectral heat traces, and oracle-vs-formula comparisons on model
// tori.  Config JSON carries the run parameters; flags override config.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "dolwit/char_forms.hpp"
#include "dolwit/jet_invariance.hpp"
#include "dolwit/jet_io.hpp"
#include "dolwit/spectral.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace dolwit;

namespace {

struct RunConfig {
  std::string manifoldPath;
  std::vector<std::string> factorPaths;
  int cutoff = 24;
  double tMin = 5e-4, tMax = 5e-3;
  int tCount = 12;
  int gridSize = 32;
  int mMax = 2, weightMax = 4, dimE = 1;
  std::string outDir = "out";
  std::map<std::string, double> tolerances = {
      {"mckean_constancy", 1e-6},   {"a20_abs", 1e-6},
      {"density_max_err", 2e-2},    {"density_integral", 1e-4},
      {"product_factorization", 1e-8}, {"product_density_max_err", 5e-2},
  };
};

json loadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void applyConfigFile(RunConfig& cfg, const std::string& path) {
  json j = loadJsonFile(path);
  if (j.contains("manifold")) cfg.manifoldPath = j["manifold"];
  if (j.contains("factors")) cfg.factorPaths = j["factors"].get<std::vector<std::string>>();
  if (j.contains("cutoff")) cfg.cutoff = j["cutoff"];
  if (j.contains("t_grid")) {
    cfg.tMin = j["t_grid"].value("min", cfg.tMin);
    cfg.tMax = j["t_grid"].value("max", cfg.tMax);
    cfg.tCount = j["t_grid"].value("count", cfg.tCount);
  }
  if (j.contains("grid")) cfg.gridSize = j["grid"];
  if (j.contains("bounds")) {
    cfg.mMax = j["bounds"].value("m_max", cfg.mMax);
    cfg.weightMax = j["bounds"].value("weight_max", cfg.weightMax);
    cfg.dimE = j["bounds"].value("dim_e", cfg.dimE);
  }
  if (j.contains("out")) cfg.outDir = j["out"];
  if (j.contains("tolerances"))
    for (const auto& [k, v] : j["tolerances"].items()) cfg.tolerances[k] = v;
}

void writeFile(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ManifoldSpec loadSpec(const RunConfig& cfg) {
  if (!cfg.factorPaths.empty()) {
    ManifoldSpec M = manifoldFromJson(loadJsonFile(cfg.factorPaths[0]));
    for (std::size_t i = 1; i < cfg.factorPaths.size(); ++i)
      M = productSpec(M, manifoldFromJson(loadJsonFile(cfg.factorPaths[i])));
    return M;
  }
  if (cfg.manifoldPath.empty()) throw std::runtime_error("config needs a manifold or factors");
  return manifoldFromJson(loadJsonFile(cfg.manifoldPath));
}

spectral::GalerkinComplex assembleFromConfig(const RunConfig& cfg) {
  if (!cfg.factorPaths.empty()) {
    auto G = spectral::assemble(manifoldFromJson(loadJsonFile(cfg.factorPaths[0])), cfg.cutoff);
    for (std::size_t i = 1; i < cfg.factorPaths.size(); ++i)
      G = spectral::tensorProduct(
          std::move(G),
          spectral::assemble(manifoldFromJson(loadJsonFile(cfg.factorPaths[i])), cfg.cutoff));
    return G;
  }
  return spectral::assemble(loadSpec(cfg), cfg.cutoff);
}

GridShape densityGrid(int m, int perAxis) {
  return GridShape{std::vector<int>(2 * m, perAxis)};
}

std::string gridCsv(const GridShape& grid, const std::vector<std::vector<double>>& columns,
                    const std::vector<std::string>& names) {
  std::string s;
  for (int a = 0; a < grid.dim(); a += 2) s += "x" + std::to_string(a / 2 + 1) + ",y" + std::to_string(a / 2 + 1) + ",";
  for (std::size_t c = 0; c < names.size(); ++c) s += names[c] + (c + 1 < names.size() ? "," : "\n");
  for (long p = 0; p < grid.total(); ++p) {
    auto x = grid.point(p);
    for (double v : x) s += fmt(v) + ",";
    for (std::size_t c = 0; c < columns.size(); ++c)
      s += fmt(columns[c][p]) + (c + 1 < columns.size() ? "," : "\n");
  }
  return s;
}

struct GateLog {
  json entries = json::array();
  bool allPassed = true;
  void check(const std::string& name, double value, double tol) {
    bool ok = std::abs(value) <= tol;
    allPassed = allPassed && ok;
    entries.push_back({{"name", name}, {"value", value}, {"tolerance", tol}, {"passed", ok}});
    std::cout << (ok ? "  [pass] " : "  [FAIL] ") << name << " = " << value << " (tol " << tol
              << ")\n";
  }
};

// ---------------------------------------------------------------------- density

int runDensity(const RunConfig& cfg) {
  ManifoldSpec M = loadSpec(cfg);
  FourierFunction dens = indexDensity(M);
  GridShape grid = densityGrid(M.m, cfg.gridSize);
  auto samples = dens.sample(grid);
  std::vector<double> vals(grid.total());
  for (long p = 0; p < grid.total(); ++p) vals[p] = samples[p].real();

  writeFile(fs::path(cfg.outDir) / "density.csv", gridCsv(grid, {vals}, {"density"}));
  json out;
  out["schema_version"] = 1;
  out["label"] = M.label;
  out["m"] = M.m;
  out["fourier"] = toJson(dens);
  double integral = spectral::integrateDensity(M, grid, vals);
  out["integral"] = integral;
  writeFile(fs::path(cfg.outDir) / "density.json", out.dump(2) + "\n");
  std::cout << "density: integral = " << integral << ", written to " << cfg.outDir << "\n";
  return 0;
}

// ------------------------------------------------------------------------- heat

struct HeatResults {
  spectral::HeatTraceSeries trace;
  spectral::FitResult traceFit;
  spectral::IndexCertificate cert;
  std::vector<double> fitted;     // pointwise a_{m,m}
  std::vector<double> analytic;   // char-forms density
  std::vector<double> a20;        // pointwise subleading coefficient
  double maxErr = 0, meanErr = 0, maxA20 = 0;
  double integral = 0;
  GridShape grid;
};

HeatResults computeHeat(const RunConfig& cfg) {
  HeatResults R;
  ManifoldSpec M = loadSpec(cfg);
  spectral::GalerkinComplex G = assembleFromConfig(cfg);
  spectral::TGrid tg{cfg.tMin, cfg.tMax, cfg.tCount};
  auto ts = tg.points();

  R.trace = spectral::heatTrace(G, tg);
  R.traceFit = spectral::fitCoefficients(R.trace, 2 * M.m);
  R.cert = spectral::mckeanSingerIndex(G, tg);

  R.grid = densityGrid(M.m, cfg.gridSize);
  auto dens = spectral::pointwiseDensityTable(G, ts, R.grid);
  FourierFunction analytic = indexDensity(M);
  auto av = analytic.sample(R.grid);

  spectral::SharedFit sf(ts, 2 * M.m);
  if (!sf.exponents().empty() && spectral::fitCoefficients(R.trace, 2 * M.m).conditionNumber > 1e10)
    std::cout << "  warning: ill-conditioned fit\n";
  long npts = R.grid.total();
  R.fitted.resize(npts);
  R.analytic.resize(npts);
  R.a20.resize(npts);
  std::vector<double> series(ts.size());
  int idx0 = M.m;  // exponent 0 position: exponents (2n-2m)/2, n=0..; zero at n=m
  for (long p = 0; p < npts; ++p) {
    for (std::size_t ti = 0; ti < ts.size(); ++ti) series[ti] = dens[ti][p];
    auto fr = sf.fit(series);
    R.fitted[p] = fr.coeff[idx0];
    R.a20[p] = fr.coeff[idx0 - 1];
    R.analytic[p] = av[p].real();
    double err = std::abs(R.fitted[p] - R.analytic[p]);
    R.maxErr = std::max(R.maxErr, err);
    R.meanErr += err;
    R.maxA20 = std::max(R.maxA20, std::abs(R.a20[p]));
  }
  R.meanErr /= double(npts);
  R.integral = spectral::integrateDensity(M, R.grid, R.fitted);
  return R;
}

json heatSummary(const RunConfig& cfg, const HeatResults& R, const GateLog& gates) {
  json out;
  out["schema_version"] = 1;
  out["cutoff"] = cfg.cutoff;
  out["t_grid"] = {{"min", cfg.tMin}, {"max", cfg.tMax}, {"count", cfg.tCount}};
  out["index"] = R.cert.index;
  out["mckean_singer_deviation"] = R.cert.maxDeviation;
  out["supertrace_fit"] = {{"exponents", R.traceFit.exponents},
                           {"coefficients", R.traceFit.coeff},
                           {"residual", R.traceFit.residual},
                           {"condition", R.traceFit.conditionNumber}};
  out["density"] = {{"max_abs_error", R.maxErr},
                    {"mean_abs_error", R.meanErr},
                    {"max_abs_a20", R.maxA20},
                    {"integral", R.integral}};
  out["tolerances_passed"] = gates.allPassed;
  out["gates"] = gates.entries;
  return out;
}

int runHeat(const RunConfig& cfg) {
  HeatResults R = computeHeat(cfg);

  std::string traceCsv = "t,supertrace\n";
  for (std::size_t i = 0; i < R.trace.t.size(); ++i)
    traceCsv += fmt(R.trace.t[i]) + "," + fmt(R.trace.value[i]) + "\n";
  writeFile(fs::path(cfg.outDir) / "heat_trace.csv", traceCsv);

  std::vector<double> absErr(R.fitted.size());
  for (std::size_t p = 0; p < R.fitted.size(); ++p) absErr[p] = std::abs(R.fitted[p] - R.analytic[p]);
  writeFile(fs::path(cfg.outDir) / "heat_density.csv",
            gridCsv(R.grid, {R.fitted, R.analytic, absErr},
                    {"fitted_density", "analytic_density", "abs_error"}));

  GateLog gates;
  gates.check("mckean_constancy", R.cert.maxDeviation, cfg.tolerances.at("mckean_constancy"));
  gates.check("a20_abs", R.traceFit.coeff[0], cfg.tolerances.at("a20_abs"));
  writeFile(fs::path(cfg.outDir) / "heat_summary.json", heatSummary(cfg, R, gates).dump(2) + "\n");
  std::cout << "heat: index " << R.cert.index << ", max density error " << R.maxErr << "\n";
  return gates.allPassed ? 0 : 1;
}

// ---------------------------------------------------------------------- compare

int runCompare(const RunConfig& cfg) {
  HeatResults R = computeHeat(cfg);

  std::vector<double> absErr(R.fitted.size());
  for (std::size_t p = 0; p < R.fitted.size(); ++p) absErr[p] = std::abs(R.fitted[p] - R.analytic[p]);
  writeFile(fs::path(cfg.outDir) / "compare.csv",
            gridCsv(R.grid, {R.fitted, R.analytic, absErr},
                    {"fitted_density", "analytic_density", "abs_error"}));

  GateLog gates;
  gates.check("density_max_err", R.maxErr, cfg.tolerances.at("density_max_err"));
  gates.check("density_integral", R.integral - double(R.cert.index),
              cfg.tolerances.at("density_integral"));
  gates.check("mckean_constancy", R.cert.maxDeviation, cfg.tolerances.at("mckean_constancy"));
  gates.check("a20_abs", R.traceFit.coeff[0], cfg.tolerances.at("a20_abs"));

  if (cfg.factorPaths.size() == 2) {
    // Factorization of the pointwise density over the factors, checked at
    // every t on the grid (a linear-algebra identity of the product complex).
    auto GA = spectral::assemble(manifoldFromJson(loadJsonFile(cfg.factorPaths[0])), cfg.cutoff);
    auto GB = spectral::assemble(manifoldFromJson(loadJsonFile(cfg.factorPaths[1])), cfg.cutoff);
    auto GP = spectral::tensorProduct(GA, GB);
    spectral::TGrid tg{cfg.tMin, cfg.tMax, cfg.tCount};
    auto ts = tg.points();
    GridShape ga = densityGrid(1, cfg.gridSize), gb = densityGrid(1, cfg.gridSize);
    auto da = spectral::pointwiseDensityTable(GA, ts, ga);
    auto db = spectral::pointwiseDensityTable(GB, ts, gb);
    auto dp = spectral::pointwiseDensityTable(GP, ts, R.grid);
    double worst = 0;
    for (std::size_t ti = 0; ti < ts.size(); ++ti)
      for (long pa = 0; pa < ga.total(); ++pa)
        for (long pb = 0; pb < gb.total(); ++pb)
          worst = std::max(worst,
                           std::abs(dp[ti][pa * gb.total() + pb] - da[ti][pa] * db[ti][pb]));
    gates.check("product_factorization", worst, cfg.tolerances.at("product_factorization"));
  }

  writeFile(fs::path(cfg.outDir) / "compare_summary.json",
            heatSummary(cfg, R, gates).dump(2) + "\n");
  std::cout << "compare: max " << R.maxErr << ", mean " << R.meanErr << ", integral " << R.integral
            << "\n";
  return gates.allPassed ? 0 : 1;
}

// ----------------------------------------------------------------- product-check

int runProductCheck(const RunConfig& cfg) {
  if (cfg.factorPaths.size() != 2)
    throw std::runtime_error("product-check needs exactly two factors");
  auto GA = spectral::assemble(manifoldFromJson(loadJsonFile(cfg.factorPaths[0])), cfg.cutoff);
  auto GB = spectral::assemble(manifoldFromJson(loadJsonFile(cfg.factorPaths[1])), cfg.cutoff);
  auto GP = spectral::tensorProduct(GA, GB);
  spectral::TGrid tg{cfg.tMin, cfg.tMax, cfg.tCount};
  auto ts = tg.points();

  double worstStr = 0;
  for (double t : ts)
    worstStr = std::max(worstStr, std::abs(GP.heatSupertrace(t) -
                                           GA.heatSupertrace(t) * GB.heatSupertrace(t)));

  GridShape ga = densityGrid(1, cfg.gridSize), gb = densityGrid(1, cfg.gridSize);
  GridShape gp = densityGrid(2, cfg.gridSize);
  auto da = spectral::pointwiseDensityTable(GA, ts, ga);
  auto db = spectral::pointwiseDensityTable(GB, ts, gb);
  auto dp = spectral::pointwiseDensityTable(GP, ts, gp);
  double worstDens = 0;
  for (std::size_t ti = 0; ti < ts.size(); ++ti)
    for (long pa = 0; pa < ga.total(); ++pa)
      for (long pb = 0; pb < gb.total(); ++pb)
        worstDens = std::max(
            worstDens, std::abs(dp[ti][pa * gb.total() + pb] - da[ti][pa] * db[ti][pb]));

  GateLog gates;
  gates.check("supertrace_factorization", worstStr, cfg.tolerances.at("product_factorization"));
  gates.check("product_factorization", worstDens, cfg.tolerances.at("product_factorization"));

  json out;
  out["schema_version"] = 1;
  out["supertrace_factorization_residual"] = worstStr;
  out["density_factorization_residual"] = worstDens;
  out["tolerances_passed"] = gates.allPassed;
  out["gates"] = gates.entries;
  writeFile(fs::path(cfg.outDir) / "product_check.json", out.dump(2) + "\n");
  return gates.allPassed ? 0 : 1;
}

// ----------------------------------------------------------------- verify-lemmas

int runVerifyLemmas(const RunConfig& cfg) {
  using namespace dolwit::jet;
  json report;
  report["schema_version"] = 1;
  report["lattice"] = json::array();
  bool allPassed = true;

  for (int m = 1; m <= cfg.mMax; ++m)
    for (int weight = 2; weight <= cfg.weightMax; weight += 2) {
      json entry;
      entry["m"] = m;
      entry["weight"] = weight;
      try {
        auto basis = invariantBasis(m, weight, cfg.dimE);
        entry["dim_invariants"] = basis.size();
        bool balance = true, twoMono = true;
        json counterexample;
        for (const auto& P : basis) {
          balance = balance && checkDegreeBalance(P);
          auto rep = checkTwoMonomialProperty(P, m);
          if (!rep.ok) {
            twoMono = false;
            counterexample = toJson(rep.B);
          }
        }
        entry["degree_balance"] = balance;
        entry["two_monomial"] = twoMono;
        if (!twoMono) entry["two_monomial_counterexample"] = counterexample;

        auto ker = kernelOfRestriction(m, weight, cfg.dimE);
        entry["dim_kernel"] = ker.size();
        if (weight < 2 * m) {
          bool empty = ker.empty();
          entry["kernel_trivial_below_top_weight"] = empty;
          allPassed = allPassed && empty;
        }
        if (weight == 2 * m) {
          bool block = true, witness = true;
          json witnesses = json::array();
          for (const auto& P : ker) {
            block = block && inWeightTwoBlock(P);
            auto rep = specialMonomial(P, m, m);
            witness = witness && rep.found && rep.length >= m;
            if (rep.found) witnesses.push_back(toJson(rep.witness));
          }
          entry["kernel_in_weight_two_block"] = block;
          entry["kernel_witnesses_found"] = witness;
          entry["witnesses"] = witnesses;
          allPassed = allPassed && block && witness;
        }
        allPassed = allPassed && balance && twoMono;
        entry["status"] = "checked";
      } catch (const ResourceGuardError& e) {
        entry["status"] = "skipped";
        entry["reason"] = e.what();
      }
      std::cout << "  (m=" << m << ", weight=" << weight << "): " << entry["status"]
                << (entry.contains("dim_invariants")
                        ? " dim=" + std::to_string(entry["dim_invariants"].get<int>())
                        : "")
                << "\n";
      report["lattice"].push_back(std::move(entry));
    }

  report["passed"] = allPassed;
  writeFile(fs::path(cfg.outDir) / "lemmas.json", report.dump(2) + "\n");
  std::cout << "verify-lemmas: " << (allPassed ? "all checks passed" : "FAILURES") << "\n";
  return allPassed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Witten-deformed Dolbeault workbench"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string configPath;
  std::vector<std::string> tolOverrides;
  int cutoffFlag = -1;
  std::string outFlag;

  auto addCommon = [&](CLI::App* sub) {
    sub->add_option("--config", configPath, "run configuration JSON");
    sub->add_option("--cutoff", cutoffFlag, "Fourier cutoff per axis");
    sub->add_option("--out", outFlag, "output directory");
    sub->add_option("--tolerance", tolOverrides, "override tolerance, NAME=VALUE")
        ->take_all();
  };

  auto* cDensity = app.add_subcommand("density", "analytic index density of a model manifold");
  auto* cHeat = app.add_subcommand("heat", "spectral heat trace and fitted density");
  auto* cCompare = app.add_subcommand("compare", "fitted vs analytic density");
  auto* cProduct = app.add_subcommand("product-check", "product factorization residuals");
  auto* cLemmas = app.add_subcommand("verify-lemmas", "exact invariant-theory checks");
  for (auto* sub : {cDensity, cHeat, cCompare, cProduct, cLemmas}) addCommon(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!configPath.empty()) applyConfigFile(cfg, configPath);
    if (cutoffFlag > 0) cfg.cutoff = cutoffFlag;
    if (!outFlag.empty()) cfg.outDir = outFlag;
    for (const auto& kv : tolOverrides) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::runtime_error("bad --tolerance " + kv);
      cfg.tolerances[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }

    if (cDensity->parsed()) return runDensity(cfg);
    if (cHeat->parsed()) return runHeat(cfg);
    if (cCompare->parsed()) return runCompare(cfg);
    if (cProduct->parsed()) return runProductCheck(cfg);
    if (cLemmas->parsed()) return runVerifyLemmas(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
