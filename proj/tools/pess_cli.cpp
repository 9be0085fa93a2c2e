#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pess/bench.hpp"

namespace {

// Accepts plain seconds or an s/m/h suffix: "90", "90s", "2m", "2h".
double parse_duration_s(const std::string& text) {
  double scale = 1.0;
  std::string num = text;
  if (!num.empty()) {
    switch (num.back()) {
      case 's': scale = 1.0; num.pop_back(); break;
      case 'm': scale = 60.0; num.pop_back(); break;
      case 'h': scale = 3600.0; num.pop_back(); break;
      default: break;
    }
  }
  std::size_t pos = 0;
  const double v = std::stod(num, &pos);
  if (pos != num.size() || v <= 0.0)
    throw CLI::ValidationError("--time", "invalid duration: " + text);
  return v * scale;
}

// Cut-off schedule by instance scale, used with --paper-scale.
double paper_scale_tcut(std::size_t n) {
  if (n <= 100) return 2.0 * 3600.0;
  if (n <= 200) return 6.0 * 3600.0;
  return 12.0 * 3600.0;
}

std::uint64_t clock_seed() {
  return static_cast<std::uint64_t>(
      std::chrono::system_clock::now().time_since_epoch().count());
}

const char* class_name(pess::RecordClass c) {
  switch (c) {
    case pess::RecordClass::improved: return "improved";
    case pess::RecordClass::equal: return "equal";
    case pess::RecordClass::worse: return "worse";
    default: return "absent";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equal-sphere-in-sphere packing solver and benchmark harness"};
  app.require_subcommand(1);

  // ---- solve ----
  auto* solve_cmd = app.add_subcommand("solve", "Run multi-seed solves for one instance");
  std::size_t n = 0;
  std::string time_str;
  std::uint64_t seed = clock_seed();
  int runs = 3;
  std::string out_dir;
  std::string records_path;
  bool paper_scale = false;
  pess::SolveConfig cfg;
  solve_cmd->add_option("--n", n, "Number of unit spheres")->required();
  solve_cmd->add_option("--time", time_str, "Wall-clock budget per run (default 60s; s/m/h suffix)");
  solve_cmd->add_option("--seed", seed, "Base seed (default: system clock)");
  solve_cmd->add_option("--runs", runs, "Independent runs");
  solve_cmd->add_option("--out", out_dir, "Output directory for solutions and summary.csv");
  solve_cmd->add_option("--s-iter", cfg.sed.s_iter, "SED iteration cap");
  solve_cmd->add_option("--c", cfg.sed.c, "Exploration coefficient");
  solve_cmd->add_option("--theta", cfg.sed.theta, "Perturbation half-width");
  solve_cmd->add_option("--l-cut", cfg.opt.cutoff, "Neighbor cutoff distance");
  solve_cmd->add_option("--init-density", cfg.init_density, "Initial radius density estimate");
  solve_cmd->add_option("--records", records_path, "Best-known records CSV (n,radius)");
  solve_cmd->add_flag("--paper-scale", paper_scale, "Use the per-scale cut-off schedule (2h/6h/12h)");
  solve_cmd->add_option("--stall-limit", cfg.stall_limit, "Stop after this many outer iterations without improvement (0 = off)");
  solve_cmd->add_option("--max-outer", cfg.max_outer_iters, "Cap on outer iterations (0 = off)");
  solve_cmd->add_option("--shrink-step", cfg.radius_shrink_step, "Relative radius shrink per outer search (default 0)");

  // ---- verify ----
  auto* verify_cmd = app.add_subcommand("verify", "Re-check a solution file");
  std::string verify_path;
  double verify_tol = 1e-9;
  verify_cmd->add_option("file", verify_path, "Solution file")->required();
  verify_cmd->add_option("--tol", verify_tol, "Geometric tolerance");

  // ---- anm-exp ----
  auto* anm_cmd = app.add_subcommand("anm-exp", "Adaptive vs per-iteration neighbor maintenance");
  std::string n_list_str;
  int anm_runs = 10;
  std::string anm_out;
  std::uint64_t anm_seed = clock_seed();
  anm_cmd->add_option("--n-list", n_list_str, "Comma-separated sphere counts")->required();
  anm_cmd->add_option("--runs", anm_runs, "Runs per n");
  anm_cmd->add_option("--out", anm_out, "Output CSV path")->required();
  anm_cmd->add_option("--seed", anm_seed, "Seed (default: system clock)");

  // ---- compare ----
  auto* compare_cmd = app.add_subcommand("compare", "Classify summary results against records");
  std::string summary_path, compare_records_path;
  compare_cmd->add_option("--summary", summary_path, "Summary CSV")->required();
  compare_cmd->add_option("--records", compare_records_path, "Records CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage/parse errors exit 2
  }

  try {
    if (solve_cmd->parsed()) {
      cfg.n = n;
      cfg.seed = seed;
      cfg.t_cut_seconds = paper_scale ? paper_scale_tcut(n)
                          : time_str.empty() ? 60.0
                                             : parse_duration_s(time_str);
      std::map<std::size_t, double> records;
      const bool have_records = !records_path.empty();
      if (have_records) records = pess::read_records(records_path);

      const pess::RunRecord rec = pess::run_instance(
          cfg, runs, have_records ? &records : nullptr, out_dir);

      std::cout << pess::run_record_csv_header() << '\n'
                << pess::run_record_csv_row(rec) << '\n';
      return 0;
    }

    if (verify_cmd->parsed()) {
      const auto v = pess::verify_solution(verify_path, verify_tol);
      std::printf("n=%zu radius=%.17g density=%.17g feasible=%s\n", v.n,
                  v.radius, v.density, v.feasible ? "yes" : "no");
      for (const auto& pv : v.report.pair_violations)
        std::printf("pair (%zu,%zu) violation %.17g\n", pv.i + 1, pv.j + 1,
                    pv.amount);
      for (const auto& wv : v.report.wall_violations)
        std::printf("sphere %zu wall violation %.17g\n", wv.i + 1, wv.amount);
      return v.feasible ? 0 : 1;
    }

    if (anm_cmd->parsed()) {
      std::vector<std::size_t> ns;
      std::stringstream ss(n_list_str);
      std::string tok;
      while (std::getline(ss, tok, ',')) ns.push_back(std::stoul(tok));
      if (ns.empty()) throw CLI::ValidationError("--n-list", "empty list");

      pess::OptimizerSettings opt;
      const auto rows = pess::anm_experiment(ns, anm_runs, opt, anm_seed);
      std::ofstream out(anm_out);
      if (!out) throw std::runtime_error("cannot open: " + anm_out);
      out << pess::anm_csv_header() << '\n';
      for (const auto& row : rows) {
        out << pess::anm_csv_row(row) << '\n';
        std::cout << pess::anm_csv_row(row) << '\n';
      }
      return 0;
    }

    if (compare_cmd->parsed()) {
      const auto rep = pess::compare_records(summary_path, compare_records_path);
      for (const auto& row : rep.rows) {
        std::printf("n=%zu r_best=%.9f record=%s class=%s\n", row.n, row.r_best,
                    row.record ? std::to_string(*row.record).c_str() : "-",
                    class_name(row.cls));
      }
      std::printf("#Improved=%d #Equal=%d #Worse=%d #Absent=%d\n", rep.improved,
                  rep.equal, rep.worse, rep.absent);
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const pess::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
