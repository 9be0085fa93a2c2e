#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pess/pipeline.hpp"
#include "pess/solution_io.hpp"

namespace pess {

// Tolerance for classifying two radii as equal (HR / RR / record comparison).
inline constexpr double kMatchTol = 1e-9;

struct RunRecord {
  std::size_t n = 0;
  int runs = 0;
  double r_best = 0.0;
  double r_avg = 0.0;
  std::optional<double> delta_best;  // absent without a records entry
  std::optional<double> delta_avg;
  double hr = 0.0;  // fraction of runs within kMatchTol of r_best
  std::optional<double> rr;  // fraction of runs <= record + kMatchTol
  double density_best = 0.0;
  double time_to_best_s = 0.0;  // of the best run
  std::uint64_t seed_base = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> radii;
};

// Summary CSV header written by run_instance.
std::string run_record_csv_header();
std::string run_record_csv_row(const RunRecord& rec);

// Executes `runs` independent solves with seeds mix64(base_seed + i). When
// out_dir is nonempty, writes each run's best solution file and appends a row
// to out_dir/summary.csv.
RunRecord run_instance(const SolveConfig& base, int runs,
                       const std::map<std::size_t, double>* records,
                       const std::string& out_dir);

struct VerifyResult {
  bool feasible = false;
  double radius = 0.0;
  std::size_t n = 0;
  double density = 0.0;
  FeasibilityReport report;
};

// Re-checks a solution file against the raw constraints; independent of the
// solver path.
VerifyResult verify_solution(const std::string& path, double geom_tol);

struct AnmExperimentRow {
  std::size_t n = 0;
  int runs = 0;
  double avg_runtime_anm_s = 0.0;
  double avg_runtime_brute_s = 0.0;
  double runtime_ratio = 0.0;       // anm / brute
  double avg_deferring_ratio = 0.0; // of the ANM runs
};

std::string anm_csv_header();
std::string anm_csv_row(const AnmExperimentRow& row);

// Paired convergence runs from identical random layouts at the density-0.6
// radius: once with the adaptive maintenance policy, once rebuilding the
// neighbor structure every iteration.
std::vector<AnmExperimentRow> anm_experiment(const std::vector<std::size_t>& ns,
                                             int runs,
                                             const OptimizerSettings& opt,
                                             std::uint64_t seed);

enum class RecordClass { improved, equal, worse, absent };

struct RecordComparison {
  std::size_t n = 0;
  double r_best = 0.0;
  std::optional<double> record;
  RecordClass cls = RecordClass::absent;
};

struct CompareReport {
  std::vector<RecordComparison> rows;
  int improved = 0;
  int equal = 0;
  int worse = 0;
  int absent = 0;
};

CompareReport compare_records(const std::string& summary_csv_path,
                              const std::string& records_path);
CompareReport compare_records(
    const std::vector<std::pair<std::size_t, double>>& bests,
    const std::map<std::size_t, double>& records);

}  // namespace pess
