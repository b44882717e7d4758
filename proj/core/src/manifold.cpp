#include "dolwit/manifold.hpp"

#include <cmath>
#include <stdexcept>

namespace dolwit {

using nlohmann::json;

ManifoldSpec flatTorus(Form omega, std::string label) {
  ManifoldSpec M;
  M.m = 1;
  M.metric = {{FourierFunction::constant(2, 0.5)}};
  M.bundleRank = 1;
  M.bundleMetric = {{FourierFunction::constant(2, 1.0)}};
  M.omega = omega.isZero() ? Form(1) : omega;
  M.label = std::move(label);
  if (!M.omega.isZero() && !M.omega.hasPureBidegree(1, 0))
    throw std::invalid_argument("flatTorus: omega must be a (1,0)-form");
  return M;
}

FourierFunction expOf(const FourierFunction& f, double tol) {
  if (f.isZero()) return FourierFunction::constant(f.dim(), 1.0);
  std::vector<int> cur = f.support();
  for (int& v : cur) v = std::max(4 * v + 4, 8);
  auto probes = probePoints(f.dim(), 128);
  for (int attempt = 0; attempt < 5; ++attempt) {
    GridShape grid = productGrid(cur, f.dim());
    auto fv = f.sample(grid);
    std::vector<cplx> ev(fv.size());
    for (std::size_t i = 0; i < fv.size(); ++i) ev[i] = std::exp(fv[i]);
    FourierFunction e = fromSamples(grid, ev).prunedRelative(1e-13);

    double err = 0;
    for (const auto& x : probes)
      err = std::max(err, std::abs(e.evaluate(x) - std::exp(f.evaluate(x))));
    if (err < tol) return e;
    for (int& v : cur) v *= 2;
  }
  throw std::runtime_error("expOf: series did not stabilize");
}

ManifoldSpec conformalTorus(const FourierFunction& phi, Form omega, std::string label) {
  ManifoldSpec M = flatTorus(std::move(omega), std::move(label));
  M.metric = {{expOf(phi * 2.0) * 0.5}};
  return M;
}

ManifoldSpec& withLineBundle(ManifoldSpec& M, const FourierFunction& psi) {
  if (M.bundleRank != 1) throw std::invalid_argument("withLineBundle: bundle already non-trivial");
  M.bundleMetric = {{expOf(-psi)}};
  return M;
}

ManifoldSpec productSpec(const ManifoldSpec& M1, const ManifoldSpec& M2) {
  ManifoldSpec M;
  M.m = M1.m + M2.m;
  M.metric.assign(M.m, std::vector<FourierFunction>(M.m, FourierFunction(2 * M.m)));
  for (int a = 0; a < M1.m; ++a)
    for (int b = 0; b < M1.m; ++b) M.metric[a][b] = embedFactorFn(M1.g(a, b), 0, M.m);
  for (int a = 0; a < M2.m; ++a)
    for (int b = 0; b < M2.m; ++b)
      M.metric[M1.m + a][M1.m + b] = embedFactorFn(M2.g(a, b), M1.m, M.m);

  M.bundleRank = M1.bundleRank * M2.bundleRank;
  M.bundleMetric.assign(M.bundleRank, std::vector<FourierFunction>(M.bundleRank, FourierFunction(2 * M.m)));
  for (int p1 = 0; p1 < M1.bundleRank; ++p1)
    for (int q1 = 0; q1 < M1.bundleRank; ++q1)
      for (int p2 = 0; p2 < M2.bundleRank; ++p2)
        for (int q2 = 0; q2 < M2.bundleRank; ++q2)
          M.bundleMetric[p1 * M2.bundleRank + p2][q1 * M2.bundleRank + q2] =
              embedFactorFn(M1.h(p1, q1), 0, M.m) * embedFactorFn(M2.h(p2, q2), M1.m, M.m);

  M.omega = embedFactor(M1.omega, 0, M.m) + embedFactor(M2.omega, M1.m, M.m);
  M.label = M1.label + "x" + M2.label;
  return M;
}

json toJson(const FourierFunction& f) {
  json modes = json::array();
  for (const auto& [k, a] : f.amplitudes())
    modes.push_back({{"freq", k}, {"re", a.real()}, {"im", a.imag()}});
  return json{{"dim", f.dim()}, {"modes", std::move(modes)}};
}

FourierFunction fourierFromJson(const json& j, int expectedDim) {
  int dim = j.at("dim");
  if (expectedDim >= 0 && dim != expectedDim)
    throw std::invalid_argument("fourierFromJson: dimension mismatch");
  FourierFunction f(dim);
  for (const auto& mjs : j.at("modes"))
    f.setAmplitude(mjs.at("freq").get<std::vector<int>>(),
                   cplx(mjs.at("re").get<double>(), mjs.at("im").get<double>()));
  return f;
}

namespace {

std::vector<int> maskToList(IndexMask mask) {
  std::vector<int> out;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) out.push_back(i + 1);
  return out;
}

IndexMask listToMask(const std::vector<int>& L) {
  IndexMask m = 0;
  for (int v : L) m |= IndexMask(1) << (v - 1);
  return m;
}

}  // namespace

json toJson(const Form& f) {
  json comps = json::array();
  for (const auto& [k, g] : f.components())
    comps.push_back({{"holoSet", maskToList(k.first)},
                     {"antiholoSet", maskToList(k.second)},
                     {"series", toJson(g)}});
  return json{{"m", f.complexDim()}, {"components", std::move(comps)}};
}

Form formFromJson(const json& j) {
  Form f(j.at("m").get<int>());
  for (const auto& c : j.at("components"))
    f.setComponent(listToMask(c.at("holoSet").get<std::vector<int>>()),
                   listToMask(c.at("antiholoSet").get<std::vector<int>>()),
                   fourierFromJson(c.at("series"), 2 * f.complexDim()));
  return f;
}

json toJson(const ManifoldSpec& M) {
  json metric = json::array();
  for (const auto& row : M.metric) {
    json r = json::array();
    for (const auto& g : row) r.push_back(toJson(g));
    metric.push_back(std::move(r));
  }
  json h = json::array();
  for (const auto& row : M.bundleMetric) {
    json r = json::array();
    for (const auto& g : row) r.push_back(toJson(g));
    h.push_back(std::move(r));
  }
  return json{{"schema_version", 1},
              {"m", M.m},
              {"metric", std::move(metric)},
              {"bundle", {{"rank", M.bundleRank}, {"h", std::move(h)}}},
              {"omega", toJson(M.omega)},
              {"label", M.label}};
}

ManifoldSpec manifoldFromJson(const json& j) {
  ManifoldSpec M;
  M.m = j.at("m");
  for (const auto& row : j.at("metric")) {
    std::vector<FourierFunction> r;
    for (const auto& g : row) r.push_back(fourierFromJson(g, 2 * M.m));
    M.metric.push_back(std::move(r));
  }
  if (static_cast<int>(M.metric.size()) != M.m)
    throw std::invalid_argument("manifoldFromJson: metric size mismatch");
  M.bundleRank = j.at("bundle").at("rank");
  for (const auto& row : j.at("bundle").at("h")) {
    std::vector<FourierFunction> r;
    for (const auto& g : row) r.push_back(fourierFromJson(g, 2 * M.m));
    M.bundleMetric.push_back(std::move(r));
  }
  M.omega = formFromJson(j.at("omega"));
  M.label = j.value("label", "");
  return M;
}

}  // namespace dolwit
