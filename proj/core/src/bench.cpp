#include "gtrex/bench.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <tuple>

#include <json.hpp>

#include "gtrex/csv.hpp"
#include "gtrex/errors.hpp"
#include "gtrex/estimators.hpp"
#include "gtrex/parallel.hpp"

namespace gtrex::bench {

std::string to_string(Method m) {
  switch (m) {
    case Method::glasso: return "glasso";
    case Method::ns_union: return "ns_union";
    case Method::ns_intersection: return "ns_intersection";
    case Method::gtrex: return "gtrex";
  }
  return "glasso";
}

Method method_from_string(const std::string& name) {
  if (name == "glasso") return Method::glasso;
  if (name == "ns_union") return Method::ns_union;
  if (name == "ns_intersection") return Method::ns_intersection;
  if (name == "gtrex") return Method::gtrex;
  throw ParameterError("unknown method: " + name);
}

std::string paper_label(Method m) {
  switch (m) {
    case Method::glasso: return "GLASSO";
    case Method::ns_union: return estimators::kPaperLabelUnion;
    case Method::ns_intersection: return estimators::kPaperLabelIntersection;
    case Method::gtrex: return "GTREX";
  }
  return "";
}

std::vector<double> threshold_grid() {
  std::vector<double> grid(19);
  for (int i = 1; i <= 19; ++i) grid[i - 1] = i / 20.0;
  return grid;
}

namespace {

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.topologies.empty()) throw ParameterError("config: topologies must be non-empty");
  if (cfg.p_list.empty()) throw ParameterError("config: p_list must be non-empty");
  if (cfg.n_multipliers.empty()) throw ParameterError("config: n_multipliers must be non-empty");
  if (cfg.methods.empty()) throw ParameterError("config: methods must be non-empty");
  if (cfg.k_rule != "p-1") throw ParameterError("config: unsupported k_rule '" + cfg.k_rule + "'");
  if (!(cfg.a_max > cfg.a_min && cfg.a_min > 0.0))
    throw ParameterError("config: need a_max > a_min > 0");
  if (cfg.cond <= 1.0) throw ParameterError("config: cond must be > 1");
  if (cfg.reps < 1) throw ParameterError("config: reps must be >= 1");
  if (cfg.gtrex.b < 1) throw ParameterError("config: gtrex.b must be >= 1");
  if (cfg.gtrex.t < 0.0 || cfg.gtrex.t > 1.0)
    throw ParameterError("config: gtrex.t must lie in [0, 1]");
  if (cfg.gtrex.q < 2 || cfg.gtrex.q % 2 != 0)
    throw ParameterError("config: gtrex.q must be an even integer >= 2");
  for (int p : cfg.p_list) {
    if (p < 2) throw ParameterError("config: p must be >= 2");
    for (auto topo : cfg.topologies) {
      gmg::TopologySpec spec{topo, p, p - 1, 0};
      if (topo == gmg::Topology::double_hub && p % 2 != 0)
        throw ParameterError("config: double_hub requires even p");
      if ((topo == gmg::Topology::four_hub || topo == gmg::Topology::four_niches) && p % 4 != 0)
        throw ParameterError("config: " + gmg::to_string(topo) + " requires p divisible by 4");
      if (p - 1 < gmg::skeleton_size(spec))
        throw ParameterError("config: k = p-1 below the skeleton of " + gmg::to_string(topo));
    }
  }
  for (int m : cfg.n_multipliers)
    if (m < 1) throw ParameterError("config: n_multipliers must be >= 1");
}

struct Scenario {
  gmg::Topology topo;
  int p, n, rep;
};

double elapsed_seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ResultRecord base_record(const Scenario& sc, Method m) {
  ResultRecord r;
  r.topology = sc.topo;
  r.p = sc.p;
  r.n = sc.n;
  r.rep = sc.rep;
  r.method = to_string(m);
  return r;
}

void append_path_records(std::vector<ResultRecord>& out, const Scenario& sc, Method m,
                         const PathResult& path, const EdgeSet& truth, double seconds) {
  // Final record: oracle-selected tuning value on the grid.
  auto [idx, score] = metrics::oracle_select(path, truth);
  ResultRecord fin = base_record(sc, m);
  fin.is_final = true;
  fin.grid_value = path.grid[idx];
  fin.score = score;
  fin.seconds = seconds;
  out.push_back(fin);
  for (std::size_t i = 0; i < path.grid.size(); ++i) {
    ResultRecord r = base_record(sc, m);
    r.is_final = false;
    r.grid_value = path.grid[i];
    r.score = metrics::precision_recall(path.edge_sets[i], truth);
    r.seconds = seconds;
    out.push_back(r);
  }
}

std::vector<ResultRecord> run_scenario(const ExperimentConfig& cfg, const Scenario& sc) {
  std::vector<ResultRecord> out;
  const std::uint64_t scenario_seed =
      fold_seed(cfg.master_seed,
                {static_cast<std::uint64_t>(sc.topo), static_cast<std::uint64_t>(sc.p),
                 static_cast<std::uint64_t>(sc.n), static_cast<std::uint64_t>(sc.rep)});

  EdgeSet truth(2);
  DataMatrix xn;
  try {
    gmg::TopologySpec spec{sc.topo, sc.p, sc.p - 1, fold_seed(scenario_seed, 1)};
    truth = gmg::generate_topology(spec);
    Rng prec_rng(fold_seed(scenario_seed, 2));
    PrecisionModel model = gmg::build_precision(truth, cfg.a_min, cfg.a_max, cfg.cond, prec_rng);
    Rng sample_rng(fold_seed(scenario_seed, 3));
    DataMatrix raw = gmg::sample_gaussian(model, sc.n, sample_rng);
    xn = gmg::normalize(raw, cfg.normalization);
  } catch (const std::exception& e) {
    for (Method m : cfg.methods) {
      ResultRecord r = base_record(sc, m);
      r.failed = true;
      r.error = e.what();
      out.push_back(r);
    }
    return out;
  }

  const auto fractions = lasso::unit_fraction_grid();
  bool want_union = false, want_inter = false;
  for (Method m : cfg.methods) {
    if (m == Method::ns_union) want_union = true;
    if (m == Method::ns_intersection) want_inter = true;
  }

  if (want_union || want_inter) {
    try {
      auto t0 = std::chrono::steady_clock::now();
      auto [path_u, path_i] = estimators::neighborhood_path(xn, fractions);
      double secs = elapsed_seconds(t0);  // shared: one pass yields both rules
      if (want_union) append_path_records(out, sc, Method::ns_union, path_u, truth, secs);
      if (want_inter) append_path_records(out, sc, Method::ns_intersection, path_i, truth, secs);
    } catch (const std::exception& e) {
      for (Method m : {Method::ns_union, Method::ns_intersection}) {
        if ((m == Method::ns_union && !want_union) || (m == Method::ns_intersection && !want_inter))
          continue;
        ResultRecord r = base_record(sc, m);
        r.failed = true;
        r.error = e.what();
        out.push_back(r);
      }
    }
  }

  for (Method m : cfg.methods) {
    if (m == Method::ns_union || m == Method::ns_intersection) continue;
    try {
      if (m == Method::glasso) {
        auto t0 = std::chrono::steady_clock::now();
        PathResult path = estimators::glasso_path(xn, fractions);
        append_path_records(out, sc, m, path, truth, elapsed_seconds(t0));
      } else {  // gtrex
        auto t0 = std::chrono::steady_clock::now();
        trex::TrexConfig tcfg;
        tcfg.q = cfg.gtrex.q;
        auto res = estimators::gtrex(xn, cfg.gtrex.b, cfg.gtrex.t, tcfg,
                                     fold_seed(scenario_seed, 4), /*jobs=*/1);
        double secs = elapsed_seconds(t0);
        ResultRecord fin = base_record(sc, m);
        fin.is_final = true;
        fin.grid_value = cfg.gtrex.t;
        fin.score = metrics::precision_recall(res.edges, truth);
        fin.seconds = secs;
        out.push_back(fin);
        PathResult tpath = estimators::gtrex_threshold_path(res.freq, threshold_grid());
        for (std::size_t i = 0; i < tpath.grid.size(); ++i) {
          ResultRecord r = base_record(sc, m);
          r.is_final = false;
          r.grid_value = tpath.grid[i];
          r.score = metrics::precision_recall(tpath.edge_sets[i], truth);
          r.seconds = secs;
          out.push_back(r);
        }
      }
    } catch (const std::exception& e) {
      ResultRecord r = base_record(sc, m);
      r.failed = true;
      r.error = e.what();
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace

RunOutput run_experiment(const ExperimentConfig& cfg, int jobs) {
  validate_config(cfg);
  std::vector<Scenario> scenarios;
  for (auto topo : cfg.topologies)
    for (int p : cfg.p_list)
      for (int mult : cfg.n_multipliers)
        for (int rep = 1; rep <= cfg.reps; ++rep)
          scenarios.push_back(Scenario{topo, p, mult * p, rep});

  std::vector<std::vector<ResultRecord>> per_task(scenarios.size());
  parallel_for(static_cast<int>(scenarios.size()), jobs,
               [&](int i) { per_task[i] = run_scenario(cfg, scenarios[i]); });

  RunOutput out;
  for (auto& recs : per_task)
    for (auto& r : recs) {
      if (r.failed) ++out.failures;
      out.records.push_back(std::move(r));
    }
  return out;
}

ExperimentConfig parse_config_json(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParameterError("config: top-level JSON object expected");

  ExperimentConfig cfg;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "topologies") {
        cfg.topologies.clear();
        for (const auto& t : value) cfg.topologies.push_back(gmg::topology_from_string(t));
      } else if (key == "p_list") {
        cfg.p_list = value.get<std::vector<int>>();
      } else if (key == "n_multipliers") {
        cfg.n_multipliers = value.get<std::vector<int>>();
      } else if (key == "k_rule") {
        cfg.k_rule = value.get<std::string>();
      } else if (key == "a_min") {
        cfg.a_min = value.get<double>();
      } else if (key == "a_max") {
        cfg.a_max = value.get<double>();
      } else if (key == "cond") {
        cfg.cond = value.get<double>();
      } else if (key == "reps") {
        cfg.reps = value.get<int>();
      } else if (key == "methods") {
        cfg.methods.clear();
        for (const auto& m : value) cfg.methods.push_back(method_from_string(m));
      } else if (key == "gtrex") {
        for (const auto& [gk, gv] : value.items()) {
          if (gk == "b")
            cfg.gtrex.b = gv.get<int>();
          else if (gk == "t")
            cfg.gtrex.t = gv.get<double>();
          else if (gk == "q")
            cfg.gtrex.q = gv.get<int>();
          else
            throw ParameterError("config: unknown gtrex field '" + gk + "'");
        }
      } else if (key == "master_seed") {
        cfg.master_seed = value.get<std::uint64_t>();
      } else if (key == "normalization") {
        cfg.normalization = normalization_from_string(value.get<std::string>());
      } else {
        throw ParameterError("config: unknown field '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("config: ") + e.what());
  }
  validate_config(cfg);
  return cfg;
}

std::vector<SummaryRow> aggregate(const std::vector<ResultRecord>& records) {
  // kind(final first), then scenario identifiers, then grid value.
  using Key = std::tuple<std::string, int, int, int, std::string, double>;
  struct Acc {
    std::vector<double> h, pr, rc, sec;
  };
  std::map<Key, Acc> groups;
  for (const auto& r : records) {
    if (r.failed) continue;
    Key key{r.is_final ? "final" : "path", static_cast<int>(r.topology), r.p, r.n, r.method,
            r.is_final ? 0.0 : r.grid_value};
    auto& acc = groups[key];
    acc.h.push_back(static_cast<double>(r.score.hamming));
    acc.pr.push_back(r.score.precision);
    acc.rc.push_back(r.score.recall);
    acc.sec.push_back(r.seconds);
  }
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  auto sd = [&](const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double m = mean(v), s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
  };
  std::vector<SummaryRow> rows;
  for (const auto& [key, acc] : groups) {
    SummaryRow row;
    row.kind = std::get<0>(key);
    row.topology = static_cast<gmg::Topology>(std::get<1>(key));
    row.p = std::get<2>(key);
    row.n = std::get<3>(key);
    row.method = std::get<4>(key);
    row.grid_value = std::get<5>(key);
    row.reps = static_cast<int>(acc.h.size());
    row.mean_hamming = mean(acc.h);
    row.sd_hamming = sd(acc.h);
    row.mean_precision = mean(acc.pr);
    row.sd_precision = sd(acc.pr);
    row.mean_recall = mean(acc.rc);
    row.sd_recall = sd(acc.rc);
    row.mean_seconds = mean(acc.sec);
    rows.push_back(row);
  }
  return rows;
}

std::string records_csv(const std::vector<ResultRecord>& records, bool finals) {
  std::string out = "topology,p,n,rep,method,grid_value,hamming,precision,recall,tp,fp,fn,seconds\n";
  for (const auto& r : records) {
    if (r.failed || r.is_final != finals) continue;
    out += gmg::to_string(r.topology);
    out += ',' + std::to_string(r.p) + ',' + std::to_string(r.n) + ',' + std::to_string(r.rep);
    out += ',' + r.method + ',' + format_double(r.grid_value);
    out += ',' + std::to_string(r.score.hamming);
    out += ',' + format_double(r.score.precision) + ',' + format_double(r.score.recall);
    out += ',' + std::to_string(r.score.tp) + ',' + std::to_string(r.score.fp) + ',' +
           std::to_string(r.score.fn);
    out += ',' + format_double(r.seconds) + '\n';
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out =
      "topology,p,n,method,paper_label,kind,grid_value,reps,mean_hamming,sd_hamming,"
      "mean_precision,sd_precision,mean_recall,sd_recall,mean_seconds\n";
  for (const auto& r : rows) {
    out += gmg::to_string(r.topology);
    out += ',' + std::to_string(r.p) + ',' + std::to_string(r.n) + ',' + r.method;
    out += ',' + paper_label(method_from_string(r.method));
    out += ',' + r.kind;
    out += ',';
    if (r.kind == "path") out += format_double(r.grid_value);
    out += ',' + std::to_string(r.reps);
    out += ',' + format_double(r.mean_hamming) + ',' + format_double(r.sd_hamming);
    out += ',' + format_double(r.mean_precision) + ',' + format_double(r.sd_precision);
    out += ',' + format_double(r.mean_recall) + ',' + format_double(r.sd_recall);
    out += ',' + format_double(r.mean_seconds) + '\n';
  }
  return out;
}

std::string errors_csv(const std::vector<ResultRecord>& records) {
  std::string out = "topology,p,n,rep,method,error\n";
  for (const auto& r : records) {
    if (!r.failed) continue;
    std::string msg = r.error;
    for (auto& ch : msg)
      if (ch == ',' || ch == '\n') ch = ';';
    out += gmg::to_string(r.topology) + ',' + std::to_string(r.p) + ',' + std::to_string(r.n) +
           ',' + std::to_string(r.rep) + ',' + r.method + ',' + msg + '\n';
  }
  return out;
}

void write_outputs(const RunOutput& out, const std::string& dir) {
  std::filesystem::create_directories(dir);
  write_text_file(dir + "/records.csv", records_csv(out.records, /*finals=*/true));
  write_text_file(dir + "/paths.csv", records_csv(out.records, /*finals=*/false));
  write_text_file(dir + "/summary.csv", summary_csv(aggregate(out.records)));
  if (out.failures > 0) write_text_file(dir + "/errors.csv", errors_csv(out.records));
}

}  // namespace gtrex::bench
