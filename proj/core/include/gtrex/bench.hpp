#ifndef GTREX_BENCH_HPP
#define GTREX_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gtrex/gmg.hpp"
#include "gtrex/metrics.hpp"
#include "gtrex/types.hpp"

namespace gtrex::bench {

enum class Method { glasso, ns_union, ns_intersection, gtrex };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

/// Reporting label used in the source tables for the two neighborhood rules.
std::string paper_label(Method m);

struct GtrexParams {
  int b = 31;
  double t = 0.75;
  int q = 40;
};

/// Scenario grid and defaults for the benchmark protocol: n runs over
/// {p, 2p, 4p, 10p}, k = p - 1, off-diagonal magnitudes in [0.2, 1],
/// condition number 100, 20 repetitions, column normalization.
struct ExperimentConfig {
  std::vector<gmg::Topology> topologies;
  std::vector<int> p_list;
  std::vector<int> n_multipliers = {1, 2, 4, 10};
  std::string k_rule = "p-1";
  double a_min = 0.2;
  double a_max = 1.0;
  double cond = 100.0;
  int reps = 20;
  std::vector<Method> methods = {Method::glasso, Method::ns_union, Method::ns_intersection,
                                 Method::gtrex};
  GtrexParams gtrex;
  std::uint64_t master_seed = 1;
  Normalization normalization = Normalization::columns_sqrt_n;
};

/// Parses the JSON config document (field names mirror ExperimentConfig).
/// Missing fields keep their defaults; unknown fields or bad values raise
/// ParameterError.
ExperimentConfig parse_config_json(const std::string& json_text);

/// One scored estimate: a final record (oracle-selected for the path
/// methods, threshold-t for GTREX) or one point of a tuning path. seconds is
/// the wall time of the method run that produced the record.
struct ResultRecord {
  gmg::Topology topology = gmg::Topology::single_hub;
  int p = 0;
  int n = 0;
  int rep = 0;
  std::string method;
  bool is_final = true;
  double grid_value = 0.0;
  metrics::Score score;
  double seconds = 0.0;
  bool failed = false;
  std::string error;
};

struct RunOutput {
  std::vector<ResultRecord> records;
  int failures = 0;
};

/// Runs the full scenario grid. Substream seeds derive from
/// hash(master_seed, topology, p, n, rep), so results are deterministic for
/// a fixed master seed regardless of the worker count, and adding scenarios
/// never perturbs existing ones. Per-scenario failures become error records
/// and the run continues.
RunOutput run_experiment(const ExperimentConfig& config, int jobs = 0);

struct SummaryRow {
  gmg::Topology topology = gmg::Topology::single_hub;
  int p = 0;
  int n = 0;
  std::string method;
  std::string kind;  // "final" or "path"
  double grid_value = 0.0;
  int reps = 0;
  double mean_hamming = 0.0, sd_hamming = 0.0;
  double mean_precision = 0.0, sd_precision = 0.0;
  double mean_recall = 0.0, sd_recall = 0.0;
  double mean_seconds = 0.0;
};

/// Groups final records by (topology, p, n, method) and path records
/// additionally by grid value; emits means and sample standard deviations
/// (a single record has sd 0).
std::vector<SummaryRow> aggregate(const std::vector<ResultRecord>& records);

/// GTREX threshold grid {0.05, 0.10, ..., 0.95}.
std::vector<double> threshold_grid();

// CSV emission. records.csv and paths.csv share the header
// topology,p,n,rep,method,grid_value,hamming,precision,recall,tp,fp,fn,seconds
// (final and per-grid-point records respectively); summary.csv carries the
// aggregate rows; errors.csv is written only when failures exist.
std::string records_csv(const std::vector<ResultRecord>& records, bool finals);
std::string summary_csv(const std::vector<SummaryRow>& rows);
std::string errors_csv(const std::vector<ResultRecord>& records);
void write_outputs(const RunOutput& out, const std::string& dir);

}  // namespace gtrex::bench

#endif  // GTREX_BENCH_HPP
