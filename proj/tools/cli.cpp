#include "argyris/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "argyris/benchmarks.hpp"

namespace argyris {

namespace {

std::string mesh_path(const std::string& out_path, int level) {
  std::string stem = out_path.empty() ? std::string("mesh") : out_path;
  const auto dot = stem.find_last_of('.');
  const auto slash = stem.find_last_of('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) stem.resize(dot);
  char buf[32];
  std::snprintf(buf, sizeof buf, "_level%03d.mesh", level);
  return stem + buf;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive Argyris finite elements for the biharmonic equation"};
  std::string benchmark = "B1", solver = "direct", mode = "extended", out_path;
  AfemConfig config;
  double kappa = 0.0;
  bool dump = false;
  app.set_config("--config", "", "key=value file mirroring the flags");
  app.add_option("--benchmark", benchmark, "B1, B2, B3 or B4")->check(CLI::IsMember({"B1", "B2", "B3", "B4"}));
  app.add_option("--theta", config.theta, "bulk parameter in (0, 1]");
  app.add_option("--solver", solver, "direct, mg or pcg")->check(CLI::IsMember({"direct", "mg", "pcg"}));
  app.add_option("--mode", mode, "standard or extended")->check(CLI::IsMember({"standard", "extended"}));
  app.add_option("--r", config.r, "smoothing steps");
  app.add_option("--tol", config.tol, "relative tolerance for eta_alg");
  app.add_option("--kappa", kappa, "oscillation parameter of the B4 boundary datum");
  app.add_option("--max-dofs", config.max_dofs, "free dof budget");
  app.add_option("--max-levels", config.max_levels, "level budget");
  app.add_option("--out", out_path, "CSV file (default: standard output)");
  app.add_flag("--dump-meshes", dump, "write the mesh of every level next to the CSV");
  app.add_flag("--report-contraction", config.report_contraction, "append |||I - BA||| per level");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return 0;
    err << app.help();
    return 2;
  }

  try {
    config.solver = parse_solver(solver);
    config.mode = parse_mode(mode);
    config.validate();
    const Benchmark b = make_benchmark(parse_benchmark(benchmark), kappa);

    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) {
        err << "cannot open " << out_path << '\n';
        return 1;
      }
    }
    std::ostream& csv = out_path.empty() ? out : file;
    write_csv_header(csv, config.report_contraction);
    afem_loop(b.problem(), config, [&](const LevelState& s) {
      write_csv_row(csv, *s.record, config.report_contraction);
      csv.flush();
      if (dump) save_mesh(mesh_path(out_path, s.level), s.system->space->mesh);
    });
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace argyris
