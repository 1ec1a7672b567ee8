#include "wopsip/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "wopsip/poisson.hpp"

namespace wopsip {

ExperimentConfig config_from_json(const std::string& json_text) {
  const nlohmann::json j = nlohmann::json::parse(json_text);
  ExperimentConfig c;
  if (j.contains("equation")) c.equation = j.at("equation").get<std::string>();
  if (j.contains("mesh")) c.mesh = mesh_family_from_string(j.at("mesh").get<std::string>());
  if (j.contains("n")) c.n_list = j.at("n").get<std::vector<int>>();
  if (j.contains("nu")) c.nu = j.at("nu").get<double>();
  if (j.contains("eta")) c.eta = j.at("eta").get<double>();
  if (j.contains("example")) c.example = j.at("example").get<std::string>();
  if (j.contains("variant"))
    c.variant = stokes_variant_from_string(j.at("variant").get<std::string>());
  if (j.contains("tol")) c.tol = j.at("tol").get<double>();
  if (j.contains("format")) c.format = j.at("format").get<std::string>();
  if (j.contains("out")) c.out = j.at("out").get<std::string>();
  if (j.contains("allow_large")) c.allow_large = j.at("allow_large").get<bool>();
  return c;
}

std::string config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["equation"] = c.equation;
  j["mesh"] = to_string(c.mesh);
  j["n"] = c.n_list;
  j["nu"] = c.nu;
  j["eta"] = c.eta;
  j["example"] = c.example;
  j["variant"] = to_string(c.variant);
  j["tol"] = c.tol;
  j["format"] = c.format;
  j["out"] = c.out;
  j["allow_large"] = c.allow_large;
  return j.dump(2);
}

void validate(const ExperimentConfig& c) {
  if (c.equation != "poisson" && c.equation != "stokes")
    throw std::invalid_argument("config: equation must be poisson or stokes");
  if (c.format != "csv" && c.format != "markdown")
    throw std::invalid_argument("config: format must be csv or markdown");
  if (c.n_list.empty()) throw std::invalid_argument("config: empty n list");
  const int base = c.n_list.front();
  if (base < 1) throw std::invalid_argument("config: n must be positive");
  for (size_t i = 0; i < c.n_list.size(); ++i) {
    const int n = c.n_list[i];
    if (i > 0 && n <= c.n_list[i - 1])
      throw std::invalid_argument("config: n list must be strictly increasing");
    int ratio = n / base;
    if (ratio * base != n || (ratio & (ratio - 1)) != 0)
      throw std::invalid_argument(
          "config: every n must be a power-of-two multiple of the first");
    if (n > 128 && !c.allow_large)
      throw std::invalid_argument("config: n > 128 requires allow_large");
  }
  if (c.nu <= 0.0 || c.nu > 1.0)
    throw std::invalid_argument("config: nu must lie in (0, 1]");
  if (c.eta <= 0.0) throw std::invalid_argument("config: eta must be positive");
}

ScalarField poisson_solution_catalog(const std::string& name) {
  ScalarField u;
  if (name == "sin") {
    const double pi = M_PI;
    u.value = [pi](Point2 x) { return std::sin(pi * x.x) * std::sin(pi * x.y); };
    u.gradient = [pi](Point2 x) {
      return Point2{pi * std::cos(pi * x.x) * std::sin(pi * x.y),
                    pi * std::sin(pi * x.x) * std::cos(pi * x.y)};
    };
    u.laplacian = [pi](Point2 x) {
      return -2.0 * pi * pi * std::sin(pi * x.x) * std::sin(pi * x.y);
    };
    u.hessian = [pi](Point2 x) {
      const double s = std::sin(pi * x.x), c = std::cos(pi * x.x);
      const double sy = std::sin(pi * x.y), cy = std::cos(pi * x.y);
      return std::array<double, 3>{-pi * pi * s * sy, pi * pi * c * cy, -pi * pi * s * sy};
    };
    return u;
  }
  if (name == "quadratic") {
    u.value = [](Point2 x) { return x.x * (1.0 - x.x); };
    u.gradient = [](Point2 x) { return Point2{1.0 - 2.0 * x.x, 0.0}; };
    u.laplacian = [](Point2) { return -2.0; };
    u.hessian = [](Point2) { return std::array<double, 3>{-2.0, 0.0, 0.0}; };
    return u;
  }
  throw std::invalid_argument("unknown poisson solution: " + name);
}

ConvergenceResult run_convergence(const ExperimentConfig& config) {
  validate(config);
  ConvergenceResult result;
  for (const int n : config.n_list) {
    const Mesh2D mesh = generate_structured(config.mesh, n);
    ErrorRecord rec;
    if (config.equation == "stokes") {
      const StokesProblem problem =
          example_catalog(stokes_example_from_string(config.example), mesh, config.nu,
                          config.eta, config.variant);
      const double tol = config.tol > 0.0 ? config.tol : 1e-10;
      const StokesSolution sol = solve_stokes(problem, tol);
      rec = relative_errors(mesh, *problem.exact_u, *problem.exact_p, sol.u, sol.p);
      rec.solver_ok = sol.report.converged;
    } else {
      const ScalarField exact = poisson_solution_catalog(config.example);
      const PoissonProblem problem = make_manufactured_poisson(mesh, exact);
      const double tol = config.tol > 0.0 ? config.tol : 1e-12;
      const auto [u_h, report] = solve_poisson(problem, tol);
      rec = relative_errors_scalar(mesh, exact, u_h);
      rec.solver_ok = report.converged;
    }
    rec.n = n;
    result.solver_ok = result.solver_ok && rec.solver_ok;

    if (!result.records.empty() && result.records.back().n * 2 == n &&
        result.records.back().solver_ok && rec.solver_ok) {
      const ErrorRecord& prev = result.records.back();
      rec.rate_energy = convergence_rate(prev.err_energy, rec.err_energy);
      rec.rate_l2 = convergence_rate(prev.err_l2, rec.err_l2);
      if (prev.err_pressure && rec.err_pressure)
        rec.rate_pressure = convergence_rate(*prev.err_pressure, *rec.err_pressure);
    }
    result.records.push_back(rec);
  }
  return result;
}

std::string render_table(const std::vector<ErrorRecord>& records,
                         const std::string& format) {
  if (format == "csv") return to_csv(records);
  if (format == "markdown") return to_markdown(records);
  throw std::invalid_argument("render_table: unknown format " + format);
}

std::vector<MeshReportRow> run_mesh_report(MeshFamily family,
                                           const std::vector<int>& n_list) {
  std::vector<MeshReportRow> rows;
  for (const int n : n_list) {
    const Mesh2D mesh = generate_structured(family, n);
    const SemiRegularityReport rep = semi_regularity_report(mesh);
    rows.push_back({n, mesh.h, rep.max_HT_over_hT, rep.max_angle * 180.0 / M_PI,
                    rep.max_aspect_ratio});
  }
  return rows;
}

std::string render_mesh_report(const std::vector<MeshReportRow>& rows,
                               const std::string& format) {
  std::ostringstream out;
  const auto row = [&](const MeshReportRow& r, const char* sep, const char* end) {
    char buffer[160];
    std::snprintf(buffer, sizeof(buffer), "%d%s%.5e%s%.5e%s%.5e%s%.5e%s", r.n, sep, r.h,
                  sep, r.max_HT_over_hT, sep, r.max_angle_deg, sep, r.max_aspect_ratio,
                  end);
    out << buffer;
  };
  if (format == "csv") {
    out << "N,h,max_HT_over_hT,max_angle_deg,max_aspect\n";
    for (const auto& r : rows) row(r, ",", "\n");
  } else {
    out << "| N | h | max H_T/h_T | max angle (deg) | max aspect |\n";
    out << "|---|---|-------------|-----------------|------------|\n";
    for (const auto& r : rows) {
      out << "| ";
      row(r, " | ", " |\n");
    }
  }
  return out.str();
}

}  // namespace wopsip
