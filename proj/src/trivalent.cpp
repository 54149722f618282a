#include "crq/trivalent.hpp"

namespace crq {

namespace {

bool s_true(TrivalentValue v) { return v == TrivalentValue::True; }
bool t_true(TrivalentValue v) { return v != TrivalentValue::False; }

void check_param(TrivalentValue v) {
  if (v == TrivalentValue::False) {
    throw std::invalid_argument("Jeffrey parameters must be 1 or 1/2");
  }
}

}  // namespace

TrivalentValue kleene_and(TrivalentValue a, TrivalentValue b) {
  return a < b ? a : b;
}

TrivalentValue kleene_or(TrivalentValue a, TrivalentValue b) {
  return a < b ? b : a;
}

TrivalentValue kleene_not(TrivalentValue a) {
  switch (a) {
    case TrivalentValue::True:
      return TrivalentValue::False;
    case TrivalentValue::False:
      return TrivalentValue::True;
    case TrivalentValue::Void:
      return TrivalentValue::Void;
  }
  return TrivalentValue::Void;
}

JeffreyParams::JeffreyParams(TrivalentValue v1, TrivalentValue v2, TrivalentValue v3,
                             TrivalentValue v4)
    : d1(v1), d2(v2), d3(v3), d4(v4) {
  check_param(d1);
  check_param(d2);
  check_param(d3);
  check_param(d4);
}

TrivalentValue jeffrey_cond(TrivalentValue a, TrivalentValue b, const JeffreyParams& params) {
  switch (a) {
    case TrivalentValue::True:
      if (b == TrivalentValue::True) return TrivalentValue::True;
      if (b == TrivalentValue::Void) return params.d1;
      return TrivalentValue::False;
    case TrivalentValue::Void:
      if (b == TrivalentValue::True) return params.d2;
      if (b == TrivalentValue::Void) return params.d3;
      return TrivalentValue::False;
    case TrivalentValue::False:
      if (b == TrivalentValue::True) return TrivalentValue::Void;
      if (b == TrivalentValue::Void) return params.d4;
      return TrivalentValue::Void;
  }
  return TrivalentValue::Void;
}

Verdict check_validity(ValidityMode mode, std::span<const ConditionalEvent> premises,
                       const ConditionalEvent& conclusion) {
  if (premises.empty()) {
    throw std::invalid_argument("validity check requires at least one premise");
  }
  const std::size_t atom_count = conclusion.universe()->size();
  const std::size_t worlds = conclusion.universe()->world_count();

  // Scan in lexicographic atom order (first atom most significant) so the
  // reported countermodel is deterministic and canonical.
  auto world_at_rank = [&](std::size_t rank) {
    World w = 0;
    for (std::size_t i = 0; i < atom_count; ++i) {
      if ((rank >> (atom_count - 1 - i)) & 1) w |= World{1} << i;
    }
    return w;
  };

  auto violates = [&](World w) {
    const TrivalentValue c = conclusion.eval(w);
    switch (mode) {
      case ValidityMode::SS:
      case ValidityMode::TT:
      case ValidityMode::SS_AND_TT: {
        bool all_s = true, all_t = true;
        for (const auto& p : premises) {
          const TrivalentValue v = p.eval(w);
          all_s = all_s && s_true(v);
          all_t = all_t && t_true(v);
        }
        const bool ss_bad = all_s && !s_true(c);
        const bool tt_bad = all_t && !t_true(c);
        if (mode == ValidityMode::SS) return ss_bad;
        if (mode == ValidityMode::TT) return tt_bad;
        return ss_bad || tt_bad;
      }
      case ValidityMode::SS_AND_TT_STAR: {
        bool some_true = false, some_false = false;
        for (const auto& p : premises) {
          const TrivalentValue v = p.eval(w);
          some_true = some_true || v == TrivalentValue::True;
          some_false = some_false || v == TrivalentValue::False;
        }
        if (some_true && !some_false && !s_true(c)) return true;
        if (c == TrivalentValue::False && !some_false) return true;
        return false;
      }
    }
    return false;
  };

  for (std::size_t rank = 0; rank < worlds; ++rank) {
    const World w = world_at_rank(rank);
    if (violates(w)) return Verdict{false, w};
  }
  return Verdict{true, std::nullopt};
}

}  // namespace crq
