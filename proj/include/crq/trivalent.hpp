#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "crq/conditional.hpp"

namespace crq {

// Strong Kleene connectives under the ordering 0 < 1/2 < 1.
TrivalentValue kleene_and(TrivalentValue a, TrivalentValue b);
TrivalentValue kleene_or(TrivalentValue a, TrivalentValue b);
TrivalentValue kleene_not(TrivalentValue a);

/// The four free slots of the Jeffrey conditional table, each 1 or 1/2
/// (True or Void). Defaults to all 1/2.
struct JeffreyParams {
  TrivalentValue d1 = TrivalentValue::Void;
  TrivalentValue d2 = TrivalentValue::Void;
  TrivalentValue d3 = TrivalentValue::Void;
  TrivalentValue d4 = TrivalentValue::Void;

  JeffreyParams() = default;
  JeffreyParams(TrivalentValue v1, TrivalentValue v2, TrivalentValue v3, TrivalentValue v4);
};

/// Jeffrey conditional a -> b:
///
///        b=1    b=1/2   b=0
/// a=1     1      d1      0
/// a=1/2   d2     d3      0
/// a=0     1/2    d4      1/2
TrivalentValue jeffrey_cond(TrivalentValue a, TrivalentValue b, const JeffreyParams& params);

enum class ValidityMode { SS, TT, SS_AND_TT, SS_AND_TT_STAR };

/// Validity verdict; when invalid, `witness` is the lexicographically first
/// world (in atom order) violating the mode's condition.
struct Verdict {
  bool valid = false;
  std::optional<World> witness;
};

/// Truth-functional validity of the inference from `premises` to `conclusion`:
///  - SS: every world making all premises strictly true (EiHi) makes the
///    conclusion strictly true.
///  - TT: every world making all premises tolerantly true (~Hi or EiHi) makes
///    the conclusion tolerantly true.
///  - SS_AND_TT: both.
///  - SS_AND_TT_STAR: (i) every world with at least one premise true and all
///    remaining premises void makes the conclusion true; (ii) every world
///    making the conclusion false makes some premise false.
Verdict check_validity(ValidityMode mode, std::span<const ConditionalEvent> premises,
                       const ConditionalEvent& conclusion);

}  // namespace crq
