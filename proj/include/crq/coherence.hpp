#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "crq/conditional.hpp"
#include "crq/constituents.hpp"
#include "crq/rational.hpp"

namespace crq {

/// Ordered exact-rational probability/prevision assessment on a family of
/// conditional events. Values are validated to lie in [0,1] and the family
/// to live in one universe.
class Assessment {
 public:
  Assessment() = default;

  void add(ConditionalEvent event, Rat value);

  std::size_t size() const { return family_.size(); }
  bool empty() const { return family_.empty(); }
  const std::vector<ConditionalEvent>& family() const { return family_; }
  const std::vector<Rat>& values() const { return values_; }
  const ConditionalEvent& event(std::size_t i) const { return family_[i]; }
  const Rat& value(std::size_t i) const { return values_[i]; }

  Assessment restricted_to(std::span<const std::size_t> indices) const;

 private:
  std::vector<ConditionalEvent> family_;
  std::vector<Rat> values_;
};

/// One coordinate vector per constituent contained in the union of the
/// antecedents: 1 for a T mark, 0 for an F mark, the assessed value for V.
struct Point {
  std::size_t constituent = 0;  // index into the constituent list
  std::vector<Rat> coords;
};

std::vector<Point> build_points(std::span<const Constituent> constituents,
                                const Assessment& assessment);

/// One solved level of the recursive coherence check: the family indices
/// still under test, their constituents, and a mixture over the points that
/// reproduces the assessed values exactly.
struct CoherenceLayer {
  std::vector<std::size_t> indices;  // positions in the original family
  std::vector<Constituent> constituents;
  std::vector<Point> points;
  std::vector<Rat> lambda;  // aligned with points; nonnegative, sums to 1
  std::vector<std::size_t> zero_layer;  // positions (into indices) carried down
};

struct CoherenceVerdict {
  bool coherent = false;
  std::vector<CoherenceLayer> layers;
  /// Valid when incoherent: the recursion depth whose linear system has no
  /// solution, plus a rendering of that subsystem.
  std::size_t failed_layer = 0;
  std::string failure;
};

/// Coherence of a conditional probability assessment by the geometric
/// method: the assessed point must be a convex mixture of the constituent
/// points, and recursively so for the sub-assessment on the zero layer
/// (the indices whose antecedents can carry no mass in any representation).
CoherenceVerdict check_coherence(const Assessment& assessment);

struct RatInterval {
  Rat lo, hi;
};

/// The closed interval of values z such that extending the (coherent) base
/// assessment with target -> z stays coherent. Endpoint candidates come from
/// an exact fractional program over the augmented constituent system plus a
/// recursion through the target's zero layer; both endpoints are re-verified
/// with full check_coherence calls before being returned.
RatInterval extension_interval(const Assessment& assessment, const ConditionalEvent& target);

}  // namespace crq
