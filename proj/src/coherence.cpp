#include "crq/coherence.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

#include "crq/lp.hpp"

namespace crq {

namespace {

std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

// Rows of the mixture system over the given points:
//   for each family coordinate i:  sum_h lambda_h Q_{h,i} = p_i
//   plus the normalization row     sum_h lambda_h = 1.
void mixture_system(const std::vector<Point>& points, const std::vector<Rat>& values,
                    std::vector<std::vector<Rat>>* a, std::vector<Rat>* b) {
  const std::size_t n = values.size();
  a->assign(n + 1, std::vector<Rat>(points.size(), Rat(0)));
  b->assign(n + 1, Rat(0));
  for (std::size_t h = 0; h < points.size(); ++h) {
    for (std::size_t i = 0; i < n; ++i) (*a)[i][h] = points[h].coords[i];
    (*a)[n][h] = Rat(1);
  }
  for (std::size_t i = 0; i < n; ++i) (*b)[i] = values[i];
  (*b)[n] = Rat(1);
}

// Max over the feasible mixtures of the mass landed inside antecedent i,
// i.e. on points whose i-th mark is not void.
Rat max_antecedent_mass(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b,
                        const std::vector<Point>& points,
                        const std::vector<Constituent>& constituents, std::size_t i) {
  std::vector<Rat> objective(points.size(), Rat(0));
  for (std::size_t h = 0; h < points.size(); ++h) {
    if (constituents[points[h].constituent].pattern[i] != TrivalentValue::Void) {
      objective[h] = Rat(1);
    }
  }
  const LpResult r = lp_maximize(a, b, objective);
  if (r.status != LpStatus::Optimal) {
    throw std::logic_error("zero-layer LP must be bounded and feasible");
  }
  return r.objective;
}

std::string describe_system(const Assessment& assessment,
                            const std::vector<std::size_t>& indices) {
  std::string s = "no convex mixture of constituent points matches { ";
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k > 0) s += ", ";
    s += assessment.event(indices[k]).to_string() + " = " +
         to_fraction(assessment.value(indices[k]));
  }
  s += " }";
  return s;
}

struct ExtensionCandidates {
  bool have_ratio = false;
  Rat ratio_min, ratio_max;
  bool have_sub = false;
  RatInterval sub;
};

RatInterval extension_recursive(const Assessment& base, const ConditionalEvent& target);

// Extension interval for the target alone (empty premise set).
RatInterval singleton_interval(const ConditionalEvent& target) {
  const bool can_be_true = target.true_part().is_satisfiable();
  const bool can_be_false = target.false_part().is_satisfiable();
  if (!can_be_false) return {Rat(1), Rat(1)};
  if (!can_be_true) return {Rat(0), Rat(0)};
  return {Rat(0), Rat(1)};
}

}  // namespace

void Assessment::add(ConditionalEvent event, Rat value) {
  if (!in_unit_interval(value)) {
    throw DomainError("assessed value " + to_fraction(value) + " outside [0,1]");
  }
  if (!family_.empty() && !(*family_[0].universe() == *event.universe())) {
    throw DomainError("assessment mixes universes");
  }
  family_.push_back(std::move(event));
  values_.push_back(std::move(value));
}

Assessment Assessment::restricted_to(std::span<const std::size_t> indices) const {
  Assessment out;
  for (std::size_t i : indices) out.add(family_.at(i), values_.at(i));
  return out;
}

std::vector<Point> build_points(std::span<const Constituent> constituents,
                                const Assessment& assessment) {
  std::vector<Point> points;
  for (std::size_t h = 0; h < constituents.size(); ++h) {
    const Constituent& c = constituents[h];
    if (c.all_void()) continue;
    Point p;
    p.constituent = h;
    p.coords.reserve(c.pattern.size());
    for (std::size_t i = 0; i < c.pattern.size(); ++i) {
      switch (c.pattern[i]) {
        case TrivalentValue::True:
          p.coords.emplace_back(1);
          break;
        case TrivalentValue::False:
          p.coords.emplace_back(0);
          break;
        case TrivalentValue::Void:
          p.coords.push_back(assessment.value(i));
          break;
      }
    }
    points.push_back(std::move(p));
  }
  return points;
}

CoherenceVerdict check_coherence(const Assessment& assessment) {
  if (assessment.empty()) throw std::invalid_argument("coherence check of an empty assessment");
  CoherenceVerdict verdict;
  std::vector<std::size_t> indices = iota_indices(assessment.size());

  while (!indices.empty()) {
    const Assessment sub = assessment.restricted_to(indices);
    CoherenceLayer layer;
    layer.indices = indices;
    layer.constituents = constituents(sub.family());
    layer.points = build_points(layer.constituents, sub);

    std::vector<std::vector<Rat>> a;
    std::vector<Rat> b;
    mixture_system(layer.points, sub.values(), &a, &b);
    auto feasible = lp_feasible_point(a, b);
    if (!feasible) {
      verdict.coherent = false;
      verdict.failed_layer = verdict.layers.size();
      verdict.failure = describe_system(assessment, indices);
      return verdict;
    }
    layer.lambda = std::move(*feasible);

    // Zero layer: indices whose antecedent takes mass zero in every
    // representation. Strictly shrinks, since every point lies in some
    // antecedent.
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (max_antecedent_mass(a, b, layer.points, layer.constituents, i) == 0) {
        layer.zero_layer.push_back(i);
        next.push_back(indices[i]);
      }
    }
    verdict.layers.push_back(std::move(layer));
    indices = std::move(next);
  }
  verdict.coherent = true;
  return verdict;
}

namespace {

RatInterval extension_recursive(const Assessment& base, const ConditionalEvent& target) {
  if (base.empty()) return singleton_interval(target);

  const std::size_t n = base.size();
  std::vector<ConditionalEvent> combined = base.family();
  combined.push_back(target);
  const std::vector<Constituent> cons = constituents(combined);

  // Points of the augmented system, with the target coordinate left
  // symbolic: we only need each point's base coordinates plus its target
  // mark (T / F / V).
  std::vector<std::size_t> point_cons;
  for (std::size_t h = 0; h < cons.size(); ++h) {
    if (!cons[h].all_void()) point_cons.push_back(h);
  }
  const std::size_t m = point_cons.size();

  auto base_coord = [&](std::size_t h, std::size_t i) -> Rat {
    switch (cons[h].pattern[i]) {
      case TrivalentValue::True:
        return Rat(1);
      case TrivalentValue::False:
        return Rat(0);
      case TrivalentValue::Void:
        return base.value(i);
    }
    return Rat(0);
  };
  auto target_mark = [&](std::size_t h) { return cons[h].pattern[n]; };

  ExtensionCandidates cand;

  // Branch A: representations giving the target's antecedent positive mass.
  // The target value is then the linear-fractional ratio
  //   (mass on target-true points) / (mass on target-non-void points),
  // whose exact range is found by a Charnes-Cooper transformed LP with
  // variables y_h = lambda_h / s and tau = 1 / s.
  {
    std::vector<std::vector<Rat>> a(n + 2, std::vector<Rat>(m + 1, Rat(0)));
    std::vector<Rat> b(n + 2, Rat(0));
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t h = point_cons[k];
      for (std::size_t i = 0; i < n; ++i) a[i][k] = base_coord(h, i);
      a[n][k] = Rat(1);
      if (target_mark(h) != TrivalentValue::Void) a[n + 1][k] = Rat(1);
    }
    for (std::size_t i = 0; i < n; ++i) a[i][m] = -base.value(i);
    a[n][m] = Rat(-1);
    b[n + 1] = Rat(1);

    std::vector<Rat> objective(m + 1, Rat(0));
    for (std::size_t k = 0; k < m; ++k) {
      if (target_mark(point_cons[k]) == TrivalentValue::True) objective[k] = Rat(1);
    }
    const LpResult up = lp_maximize(a, b, objective);
    if (up.status == LpStatus::Optimal) {
      for (auto& v : objective) v = -v;
      const LpResult down = lp_maximize(a, b, objective);
      if (down.status != LpStatus::Optimal) {
        throw std::logic_error("fractional program must stay solvable");
      }
      cand.have_ratio = true;
      cand.ratio_max = up.objective;
      cand.ratio_min = -down.objective;
    }
  }

  // Branch B: representations putting no mass on the target's antecedent.
  // There the target joins the zero layer and only the sub-assessment on the
  // indices that also carry no mass constrains it; recurse on them.
  {
    std::vector<std::size_t> void_points;
    for (std::size_t h : point_cons) {
      if (target_mark(h) == TrivalentValue::Void) void_points.push_back(h);
    }
    std::vector<std::vector<Rat>> a(n + 1, std::vector<Rat>(void_points.size(), Rat(0)));
    std::vector<Rat> b(n + 1, Rat(0));
    for (std::size_t k = 0; k < void_points.size(); ++k) {
      for (std::size_t i = 0; i < n; ++i) a[i][k] = base_coord(void_points[k], i);
      a[n][k] = Rat(1);
    }
    for (std::size_t i = 0; i < n; ++i) b[i] = base.value(i);
    b[n] = Rat(1);

    if (!void_points.empty() && lp_feasible_point(a, b)) {
      std::vector<std::size_t> carried;
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rat> objective(void_points.size(), Rat(0));
        for (std::size_t k = 0; k < void_points.size(); ++k) {
          if (cons[void_points[k]].pattern[i] != TrivalentValue::Void) objective[k] = Rat(1);
        }
        const LpResult r = lp_maximize(a, b, objective);
        if (r.status != LpStatus::Optimal) {
          throw std::logic_error("zero-layer LP must be bounded and feasible");
        }
        if (r.objective == 0) carried.push_back(i);
      }
      cand.have_sub = true;
      cand.sub = extension_recursive(base.restricted_to(carried), target);
    }
  }

  if (!cand.have_ratio && !cand.have_sub) {
    throw std::logic_error("coherent base assessment must admit an extension");
  }
  RatInterval out;
  if (cand.have_ratio && cand.have_sub) {
    out.lo = cand.ratio_min < cand.sub.lo ? cand.ratio_min : cand.sub.lo;
    out.hi = cand.ratio_max > cand.sub.hi ? cand.ratio_max : cand.sub.hi;
  } else if (cand.have_ratio) {
    out = {cand.ratio_min, cand.ratio_max};
  } else {
    out = cand.sub;
  }
  return out;
}

}  // namespace

RatInterval extension_interval(const Assessment& assessment, const ConditionalEvent& target) {
  if (!assessment.empty() && !(*assessment.event(0).universe() == *target.universe())) {
    throw DomainError("extension target lives in a different universe");
  }
  if (!assessment.empty() && !check_coherence(assessment).coherent) {
    throw DomainError("extension requested from an incoherent base assessment");
  }
  const RatInterval interval = extension_recursive(assessment, target);

  // The coherent extension set is a closed interval; both candidate
  // endpoints must replay through the full recursive check. A failure here
  // would mean the candidate enumeration is incomplete for this instance,
  // which is reported rather than silently answered.
  for (const Rat& endpoint : {interval.lo, interval.hi}) {
    Assessment augmented = assessment;
    augmented.add(target, endpoint);
    if (!check_coherence(augmented).coherent) {
      throw DomainError("extension endpoint " + to_fraction(endpoint) +
                        " failed re-verification; candidate set incomplete");
    }
  }
  return interval;
}

}  // namespace crq
