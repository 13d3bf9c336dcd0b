#ifndef GTREX_EDGE_SET_HPP
#define GTREX_EDGE_SET_HPP

#include <iosfwd>
#include <set>
#include <string>
#include <utility>

namespace gtrex {

/// Undirected graph over nodes {1,...,p}, stored as the set of edges.
///
/// Edges are unordered pairs kept in canonical form (i, j) with i < j and
/// 1-based node indices; membership of (j, i) equals membership of (i, j).
/// Self-loops are rejected. Immutable value semantics apart from add().
class EdgeSet {
 public:
  using Pair = std::pair<int, int>;

  explicit EdgeSet(int p);

  int p() const { return p_; }
  long long size() const { return static_cast<long long>(edges_.size()); }
  bool empty() const { return edges_.empty(); }

  /// Inserts edge {i, j}; order of i and j does not matter.
  void add(int i, int j);
  bool contains(int i, int j) const;

  /// Canonical pairs in lexicographic order.
  const std::set<Pair>& pairs() const { return edges_; }

  bool operator==(const EdgeSet& other) const = default;

  /// Text form: header "p <p> k <k>" then one "i j" line per edge, i < j,
  /// lexicographically sorted. Round-trips bit-exactly through parse().
  std::string serialize() const;
  void write(std::ostream& os) const;
  static EdgeSet parse(std::istream& is);
  static EdgeSet parse_string(const std::string& text);

  /// Largest possible edge count, p(p-1)/2.
  long long max_edges() const { return static_cast<long long>(p_) * (p_ - 1) / 2; }

 private:
  void check_nodes(int i, int j) const;

  int p_;
  std::set<Pair> edges_;
};

}  // namespace gtrex

#endif  // GTREX_EDGE_SET_HPP
