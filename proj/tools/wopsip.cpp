// Experiment runner for the weakly over-penalised Nitsche schemes:
// convergence sweeps, mesh geometry reports, VTK export, and the
// numerical verification suite.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wopsip/experiment.hpp"
#include "wopsip/verify.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

struct SweepOptions {
  std::string config_path;
  std::string mesh;
  std::vector<int> n;
  double nu = 0.0;
  double eta = 0.0;
  std::string example;
  std::string variant;
  double tol = 0.0;
  std::string format;
  std::string out;
  bool allow_large = false;
};

void add_sweep_flags(CLI::App* cmd, SweepOptions& opt) {
  cmd->add_option("--config", opt.config_path, "JSON config file; flags override");
  cmd->add_option("--mesh", opt.mesh, "uniform|graded|cosine");
  cmd->add_option("--n", opt.n, "refinement levels, e.g. --n 16 32 64");
  cmd->add_option("--nu", opt.nu, "viscosity (stokes)");
  cmd->add_option("--eta", opt.eta, "penalty scale (stokes)");
  cmd->add_option("--example", opt.example, "example1|example2 (stokes), sin|quadratic (poisson)");
  cmd->add_option("--variant", opt.variant, "robust|plain (stokes)");
  cmd->add_option("--tol", opt.tol, "solver tolerance");
  cmd->add_option("--format", opt.format, "csv|markdown");
  cmd->add_option("--out", opt.out, "output path (default stdout)");
  cmd->add_flag("--allow-large", opt.allow_large, "allow n > 128");
}

wopsip::ExperimentConfig merge_config(const CLI::App* cmd, const SweepOptions& opt,
                                      const std::string& equation) {
  wopsip::ExperimentConfig config;
  if (!opt.config_path.empty())
    config = wopsip::config_from_json(read_file(opt.config_path));
  config.equation = equation;
  if (equation == "poisson" && config.example == "example1") config.example = "sin";
  if (cmd->count("--mesh") > 0) config.mesh = wopsip::mesh_family_from_string(opt.mesh);
  if (cmd->count("--n") > 0) config.n_list = opt.n;
  if (cmd->count("--nu") > 0) config.nu = opt.nu;
  if (cmd->count("--eta") > 0) config.eta = opt.eta;
  if (cmd->count("--example") > 0) config.example = opt.example;
  if (cmd->count("--variant") > 0)
    config.variant = wopsip::stokes_variant_from_string(opt.variant);
  if (cmd->count("--tol") > 0) config.tol = opt.tol;
  if (cmd->count("--format") > 0) config.format = opt.format;
  if (cmd->count("--out") > 0) config.out = opt.out;
  if (cmd->count("--allow-large") > 0) config.allow_large = true;
  return config;
}

int run_sweep(const wopsip::ExperimentConfig& config) {
  const wopsip::ConvergenceResult result = wopsip::run_convergence(config);
  write_output(wopsip::render_table(result.records, config.format), config.out);
  if (!result.solver_ok) {
    std::cerr << "warning: solver did not reach tolerance on at least one level\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nitsche schemes on anisotropic meshes of the unit square"};
  app.require_subcommand(1);

  SweepOptions poisson_opt, stokes_opt;
  CLI::App* poisson = app.add_subcommand("poisson", "Poisson convergence sweep");
  add_sweep_flags(poisson, poisson_opt);
  CLI::App* stokes = app.add_subcommand("stokes", "Stokes convergence sweep");
  add_sweep_flags(stokes, stokes_opt);

  std::string report_mesh = "uniform";
  std::vector<int> report_n = {8, 16, 32, 64};
  std::string report_format = "markdown";
  std::string report_out;
  CLI::App* mesh_report =
      app.add_subcommand("mesh-report", "Semi-regularity scan of a mesh family");
  mesh_report->add_option("--mesh", report_mesh, "uniform|graded|cosine");
  mesh_report->add_option("--n", report_n, "levels");
  mesh_report->add_option("--format", report_format, "csv|markdown");
  mesh_report->add_option("--out", report_out, "output path");

  CLI::App* verify = app.add_subcommand("verify", "Run the numerical property suite");

  std::string vtk_mesh = "uniform";
  int vtk_n = 16;
  std::string vtk_out = "mesh.vtk";
  CLI::App* export_vtk_cmd =
      app.add_subcommand("export-vtk", "Write a mesh with geometry fields");
  export_vtk_cmd->add_option("--mesh", vtk_mesh, "uniform|graded|cosine");
  export_vtk_cmd->add_option("--n", vtk_n, "refinement level");
  export_vtk_cmd->add_option("--out", vtk_out, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (poisson->parsed()) return run_sweep(merge_config(poisson, poisson_opt, "poisson"));
    if (stokes->parsed()) return run_sweep(merge_config(stokes, stokes_opt, "stokes"));
    if (mesh_report->parsed()) {
      const auto rows = wopsip::run_mesh_report(
          wopsip::mesh_family_from_string(report_mesh), report_n);
      write_output(wopsip::render_mesh_report(rows, report_format), report_out);
      return 0;
    }
    if (verify->parsed()) {
      const wopsip::VerifyReport report = wopsip::run_verify();
      wopsip::print_report(report, std::cout);
      return report.all_pass() ? 0 : 2;
    }
    if (export_vtk_cmd->parsed()) {
      const wopsip::Mesh2D mesh = wopsip::generate_structured(
          wopsip::mesh_family_from_string(vtk_mesh), vtk_n);
      std::vector<wopsip::VtkField> fields;
      wopsip::VtkField ratio{"HT_over_hT", true, {}};
      wopsip::VtkField aspect{"aspect_ratio", true, {}};
      for (const auto& g : mesh.geometry) {
        ratio.values.push_back(g.HT / g.diameter);
        aspect.values.push_back(g.diameter * g.diameter / (2.0 * g.area));
      }
      fields.push_back(std::move(ratio));
      fields.push_back(std::move(aspect));
      wopsip::export_vtk(mesh, fields, vtk_out);
      return 0;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
