#include "node_set.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "rng.hpp"

namespace torsmooth {

NodeSet::NodeSet(std::vector<Rational> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("NodeSet: empty");
  for (auto& p : points_) p = p.mod1();
  std::sort(points_.begin(), points_.end());
  for (size_t i = 0; i + 1 < points_.size(); ++i) {
    if (points_[i] == points_[i + 1]) {
      throw std::invalid_argument("NodeSet: duplicate node " + points_[i].str());
    }
  }
}

Rational NodeSet::min_gap() const {
  if (points_.size() == 1) return Rational(1);
  Rational best = Rational(1) + points_.front() - points_.back();  // cyclic wrap gap
  for (size_t i = 0; i + 1 < points_.size(); ++i) {
    Rational g = points_[i + 1] - points_[i];
    if (g < best) best = g;
  }
  return best;
}

double NodeSet::gamma() const {
  return (Rational(size()) * min_gap()).to_double();
}

std::string NodeSet::str() const {
  std::ostringstream out;
  for (size_t i = 0; i < points_.size(); ++i) {
    if (i) out << ' ';
    Rational p = points_[i];
    out << p.num() << '/' << p.den();
  }
  return out.str();
}

NodeSet NodeSet::parse(const std::string& text) {
  std::istringstream in(text);
  std::vector<Rational> pts;
  std::string tok;
  while (in >> tok) pts.push_back(Rational::parse(tok));
  return NodeSet(std::move(pts));
}

NodeSet lagrange_nodes(int n) {
  if (n < 0) throw std::invalid_argument("lagrange_nodes: negative degree");
  return uniform_nodes(2 * n + 1);
}

NodeSet dyadic_nodes(int j) {
  if (j < 0 || j > 30) throw std::invalid_argument("dyadic_nodes: level out of range");
  return uniform_nodes(1 << j);
}

NodeSet uniform_nodes(int count) {
  if (count <= 0) throw std::invalid_argument("uniform_nodes: count must be positive");
  std::vector<Rational> pts;
  pts.reserve(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) pts.emplace_back(k, count);
  return NodeSet(std::move(pts));
}

NodeSet perturb_nodes(const NodeSet& nodes, const Rational& eps, std::uint64_t seed) {
  if (eps < Rational(0) || !(eps < Rational(1, 2))) {
    throw std::invalid_argument("perturb_nodes: eps must lie in [0, 1/2)");
  }
  Rng rng(seed);
  const Rational spacing(1, nodes.size());
  constexpr std::int64_t kRes = 1 << 20;
  std::vector<Rational> pts;
  pts.reserve(static_cast<size_t>(nodes.size()));
  for (const Rational& p : nodes.points()) {
    const std::int64_t u = rng.uniform_int(-kRes, kRes);
    pts.push_back(p + spacing * eps * Rational(u, kRes));
  }
  return NodeSet(std::move(pts));  // re-sorts; throws if offsets collide
}

}  // namespace torsmooth
