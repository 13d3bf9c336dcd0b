#include "gtrex/metrics.hpp"

#include "gtrex/errors.hpp"

namespace gtrex::metrics {

namespace {

void check_same_p(const EdgeSet& est, const EdgeSet& truth) {
  if (est.p() != truth.p())
    throw ParameterError("metrics: edge sets have different node counts (" +
                         std::to_string(est.p()) + " vs " + std::to_string(truth.p()) + ")");
}

}  // namespace

long long hamming(const EdgeSet& est, const EdgeSet& truth) {
  check_same_p(est, truth);
  long long tp = 0;
  for (const auto& e : est.pairs())
    if (truth.pairs().count(e)) ++tp;
  return (est.size() - tp) + (truth.size() - tp);
}

Score precision_recall(const EdgeSet& est, const EdgeSet& truth) {
  check_same_p(est, truth);
  Score s;
  for (const auto& e : est.pairs())
    if (truth.pairs().count(e)) ++s.tp;
  s.fp = est.size() - s.tp;
  s.fn = truth.size() - s.tp;
  s.hamming = s.fp + s.fn;
  if (s.tp + s.fp > 0) {
    s.precision = static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fp);
  } else {
    s.precision = 1.0;
    s.degenerate_precision = true;
  }
  if (s.tp + s.fn > 0) {
    s.recall = static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fn);
  } else {
    s.recall = 1.0;
    s.degenerate_recall = true;
  }
  return s;
}

std::pair<int, Score> oracle_select(const PathResult& path, const EdgeSet& truth) {
  if (path.edge_sets.empty()) throw ParameterError("oracle_select: empty path");
  int best = 0;
  long long best_h = -1;
  for (std::size_t i = 0; i < path.edge_sets.size(); ++i) {
    long long h = hamming(path.edge_sets[i], truth);
    // <= keeps the later (larger tuning value) index on ties.
    if (best_h < 0 || h <= best_h) {
      best_h = h;
      best = static_cast<int>(i);
    }
  }
  return {best, precision_recall(path.edge_sets[best], truth)};
}

}  // namespace gtrex::metrics
