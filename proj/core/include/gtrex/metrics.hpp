#ifndef GTREX_METRICS_HPP
#define GTREX_METRICS_HPP

#include <utility>

#include "gtrex/types.hpp"

namespace gtrex::metrics {

struct Score {
  long long hamming = 0;  // = fp + fn
  double precision = 0.0;
  double recall = 0.0;
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
  /// Set when the corresponding denominator was empty and the value was
  /// pinned to 1.0 by convention.
  bool degenerate_precision = false;
  bool degenerate_recall = false;
};

/// Size of the symmetric difference of the two edge sets. Both must share p.
long long hamming(const EdgeSet& est, const EdgeSet& truth);

/// tp/fp/fn counts with precision = tp/(tp+fp) and recall = tp/(tp+fn); an
/// empty denominator yields 1.0 with the degenerate flag set.
Score precision_recall(const EdgeSet& est, const EdgeSet& truth);

/// Grid index minimizing the Hamming distance to truth; ties break toward
/// the largest tuning value (the sparser estimate).
std::pair<int, Score> oracle_select(const PathResult& path, const EdgeSet& truth);

}  // namespace gtrex::metrics

#endif  // GTREX_METRICS_HPP
