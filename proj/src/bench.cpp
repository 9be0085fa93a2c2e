#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pess/bench.hpp"

namespace pess {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string opt_str(const std::optional<double>& v) {
  return v ? fmt17(*v) : std::string();
}

}  // namespace

std::string run_record_csv_header() {
  return "n,r_best,r_avg,delta_best,delta_avg,hr,rr,density_best,"
         "time_to_best_s,seed_base,runs";
}

std::string run_record_csv_row(const RunRecord& rec) {
  std::ostringstream ss;
  ss << rec.n << ',' << fmt17(rec.r_best) << ',' << fmt17(rec.r_avg) << ','
     << opt_str(rec.delta_best) << ',' << opt_str(rec.delta_avg) << ','
     << fmt17(rec.hr) << ',' << opt_str(rec.rr) << ','
     << fmt17(rec.density_best) << ',' << fmt17(rec.time_to_best_s) << ','
     << rec.seed_base << ',' << rec.runs;
  return ss.str();
}

RunRecord run_instance(const SolveConfig& base, int runs,
                       const std::map<std::size_t, double>* records,
                       const std::string& out_dir) {
  RunRecord rec;
  rec.n = base.n;
  rec.runs = runs;
  rec.seed_base = base.seed;

  std::vector<SolveResult> results;
  results.reserve(static_cast<std::size_t>(runs));
  for (int i = 0; i < runs; ++i) {
    SolveConfig cfg = base;
    cfg.seed = mix64(base.seed + static_cast<std::uint64_t>(i));
    rec.seeds.push_back(cfg.seed);
    results.push_back(solve(cfg));
  }

  std::size_t best_run = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const double r = results[i].best_radius;
    rec.radii.push_back(r);
    sum += r;
    if (r < results[best_run].best_radius) best_run = i;
  }
  rec.r_best = results[best_run].best_radius;
  rec.r_avg = sum / static_cast<double>(runs);
  rec.density_best = density(results[best_run].best);
  rec.time_to_best_s = results[best_run].time_to_best_s;

  int hits = 0;
  for (const double r : rec.radii)
    if (r <= rec.r_best + kMatchTol) ++hits;
  rec.hr = static_cast<double>(hits) / static_cast<double>(runs);

  if (records != nullptr) {
    const auto it = records->find(base.n);
    if (it != records->end()) {
      rec.delta_best = rec.r_best - it->second;
      rec.delta_avg = rec.r_avg - it->second;
      int ok = 0;
      for (const double r : rec.radii)
        if (r <= it->second + kMatchTol) ++ok;
      rec.rr = static_cast<double>(ok) / static_cast<double>(runs);
    }
  }

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    for (std::size_t i = 0; i < results.size(); ++i) {
      std::ostringstream name;
      name << "solution_n" << base.n << "_run" << i << ".txt";
      write_solution((std::filesystem::path(out_dir) / name.str()).string(),
                     results[i].best);
    }
    const auto summary = std::filesystem::path(out_dir) / "summary.csv";
    const bool fresh = !std::filesystem::exists(summary);
    std::ofstream f(summary, std::ios::app);
    if (fresh) f << run_record_csv_header() << '\n';
    f << run_record_csv_row(rec) << '\n';
  }
  return rec;
}

VerifyResult verify_solution(const std::string& path, double geom_tol) {
  const Solution s = read_solution(path);
  VerifyResult out;
  out.n = s.layout.sphere_count();
  out.radius = s.radius;
  out.density = density(s);
  out.report = check_feasible(s, geom_tol);
  out.feasible = out.report.feasible;
  return out;
}

std::string anm_csv_header() {
  return "n,runs,avg_runtime_anm_s,avg_runtime_brute_s,runtime_ratio,"
         "avg_deferring_ratio";
}

std::string anm_csv_row(const AnmExperimentRow& row) {
  std::ostringstream ss;
  ss << row.n << ',' << row.runs << ',' << fmt17(row.avg_runtime_anm_s) << ','
     << fmt17(row.avg_runtime_brute_s) << ',' << fmt17(row.runtime_ratio)
     << ',' << fmt17(row.avg_deferring_ratio);
  return ss.str();
}

std::vector<AnmExperimentRow> anm_experiment(const std::vector<std::size_t>& ns,
                                             int runs,
                                             const OptimizerSettings& opt,
                                             std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  RngStream rng(seed);

  std::vector<AnmExperimentRow> rows;
  for (const std::size_t n : ns) {
    const double radius = std::cbrt(static_cast<double>(n) / 0.6);
    AnmExperimentRow row;
    row.n = n;
    row.runs = runs;

    double anm_s = 0.0, brute_s = 0.0, defer = 0.0;
    for (int run = 0; run < runs; ++run) {
      RngStream sub = rng.split((static_cast<std::uint64_t>(n) << 20) +
                                static_cast<std::uint64_t>(run));
      const Layout layout = random_layout(n, radius, sub);

      ElasticObjective obj(n, radius);
      OptimizerSettings anm_opt = opt;
      anm_opt.rebuild_every_iter = false;
      auto t0 = Clock::now();
      auto anm_res = minimize(obj, layout.coords, anm_opt);
      anm_s += std::chrono::duration<double>(Clock::now() - t0).count();
      defer += anm_res.report.deferring_ratio();

      OptimizerSettings brute_opt = opt;
      brute_opt.rebuild_every_iter = true;
      t0 = Clock::now();
      auto brute_res = minimize(obj, layout.coords, brute_opt);
      brute_s += std::chrono::duration<double>(Clock::now() - t0).count();
    }

    row.avg_runtime_anm_s = anm_s / runs;
    row.avg_runtime_brute_s = brute_s / runs;
    row.runtime_ratio = row.avg_runtime_brute_s > 0.0
                            ? row.avg_runtime_anm_s / row.avg_runtime_brute_s
                            : 0.0;
    row.avg_deferring_ratio = defer / runs;
    rows.push_back(row);
  }
  return rows;
}

CompareReport compare_records(
    const std::vector<std::pair<std::size_t, double>>& bests,
    const std::map<std::size_t, double>& records) {
  CompareReport rep;
  for (const auto& [n, r_best] : bests) {
    RecordComparison row;
    row.n = n;
    row.r_best = r_best;
    const auto it = records.find(n);
    if (it == records.end()) {
      row.cls = RecordClass::absent;
      ++rep.absent;
    } else {
      row.record = it->second;
      const double diff = r_best - it->second;
      if (std::abs(diff) <= kMatchTol) {
        row.cls = RecordClass::equal;
        ++rep.equal;
      } else if (diff < 0.0) {
        row.cls = RecordClass::improved;
        ++rep.improved;
      } else {
        row.cls = RecordClass::worse;
        ++rep.worse;
      }
    }
    rep.rows.push_back(row);
  }
  // records with no summary entry
  for (const auto& [n, radius] : records) {
    const bool seen = std::any_of(bests.begin(), bests.end(),
                                  [&](const auto& b) { return b.first == n; });
    if (!seen) {
      RecordComparison row;
      row.n = n;
      row.record = radius;
      row.cls = RecordClass::absent;
      ++rep.absent;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

CompareReport compare_records(const std::string& summary_csv_path,
                              const std::string& records_path) {
  std::ifstream f(summary_csv_path);
  if (!f) throw std::runtime_error("cannot open: " + summary_csv_path);

  std::vector<std::pair<std::size_t, double>> bests;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("n,", 0) == 0) continue;  // header
    std::istringstream ss(line);
    std::string field;
    if (!std::getline(ss, field, ',')) throw ParseError("missing n", lineno);
    const std::size_t n = std::stoul(field);
    if (!std::getline(ss, field, ','))
      throw ParseError("missing r_best", lineno);
    bests.emplace_back(n, std::stod(field));
  }
  return compare_records(bests, read_records(records_path));
}

}  // namespace pess
