#pragma once

#include <optional>
#include <vector>

#include "crq/rational.hpp"

namespace crq {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat objective;
  std::vector<Rat> solution;
};

/// Exact-rational two-phase simplex with Bland's rule, for problems in
/// equality standard form:
///
///   maximize c.x  subject to  A x = b,  x >= 0.
///
/// Deterministic: the same input always yields the same optimal basis.
LpResult lp_maximize(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b,
                     const std::vector<Rat>& c);

/// Phase-1 only: a basic feasible solution of { A x = b, x >= 0 }, or nullopt.
std::optional<std::vector<Rat>> lp_feasible_point(const std::vector<std::vector<Rat>>& a,
                                                  const std::vector<Rat>& b);

}  // namespace crq
