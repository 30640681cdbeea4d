#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rational.hpp"

namespace torsmooth {

// Sampling nodes on the torus: sorted, pairwise distinct rationals in [0,1).
// gamma() is n times the minimal cyclic gap, the mesh constant the sampling
// inequalities are stated in terms of; it is computed in exact arithmetic.
class NodeSet {
 public:
  explicit NodeSet(std::vector<Rational> points);

  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<Rational>& points() const { return points_; }
  const Rational& point(int k) const { return points_[static_cast<size_t>(k)]; }

  Rational min_gap() const;        // minimal cyclic gap, exact
  double gamma() const;            // size() * min_gap()
  double point_double(int k) const { return points_[static_cast<size_t>(k)].to_double(); }

  // Space-separated "num/den" tokens.
  std::string str() const;
  static NodeSet parse(const std::string& text);

 private:
  std::vector<Rational> points_;
};

// The 2n+1 uniform nodes k/(2n+1) used by degree-n trigonometric interpolation.
NodeSet lagrange_nodes(int n);

// The 2^j dyadic nodes k/2^j.
NodeSet dyadic_nodes(int j);

// count uniform nodes k/count.
NodeSet uniform_nodes(int count);

// Random rational offsets of at most eps times the uniform spacing 1/n,
// deterministic in seed. eps must lie in [0, 1/2) so distinctness survives.
NodeSet perturb_nodes(const NodeSet& nodes, const Rational& eps, std::uint64_t seed);

}  // namespace torsmooth
