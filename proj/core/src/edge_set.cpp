#include "gtrex/edge_set.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "gtrex/errors.hpp"

namespace gtrex {

EdgeSet::EdgeSet(int p) : p_(p) {
  if (p < 2) throw ParameterError("EdgeSet: node count must be >= 2, got " + std::to_string(p));
}

void EdgeSet::check_nodes(int i, int j) const {
  if (i < 1 || i > p_ || j < 1 || j > p_)
    throw ParameterError("EdgeSet: node index out of range [1," + std::to_string(p_) + "]");
  if (i == j) throw ParameterError("EdgeSet: self-loop at node " + std::to_string(i));
}

void EdgeSet::add(int i, int j) {
  check_nodes(i, j);
  if (i > j) std::swap(i, j);
  edges_.emplace(i, j);
}

bool EdgeSet::contains(int i, int j) const {
  check_nodes(i, j);
  if (i > j) std::swap(i, j);
  return edges_.count({i, j}) > 0;
}

void EdgeSet::write(std::ostream& os) const {
  os << "p " << p_ << " k " << size() << "\n";
  for (const auto& [i, j] : edges_) os << i << " " << j << "\n";
}

std::string EdgeSet::serialize() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

EdgeSet EdgeSet::parse(std::istream& is) {
  std::string tag_p, tag_k;
  int p = 0;
  long long k = 0;
  if (!(is >> tag_p >> p >> tag_k >> k) || tag_p != "p" || tag_k != "k")
    throw DataError("EdgeSet: malformed header, expected 'p <p> k <k>'");
  EdgeSet es(p);
  for (long long e = 0; e < k; ++e) {
    int i = 0, j = 0;
    if (!(is >> i >> j)) throw DataError("EdgeSet: expected " + std::to_string(k) + " edges");
    if (i >= j) throw DataError("EdgeSet: edge not in canonical i < j form");
    es.add(i, j);
  }
  if (es.size() != k) throw DataError("EdgeSet: duplicate edges in input");
  return es;
}

EdgeSet EdgeSet::parse_string(const std::string& text) {
  std::istringstream is(text);
  return parse(is);
}

}  // namespace gtrex
