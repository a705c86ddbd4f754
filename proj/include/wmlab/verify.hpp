#pragma once
// The equation-by-equation verification suite behind `wmlab verify`.

#include "wmlab/report.hpp"

namespace wmlab {

inline constexpr const char* kLiteral = "paper-literal";
inline constexpr const char* kRepaired = "repaired";

/// Runs every check once and returns the entries sorted by equation id.
/// A check that throws is recorded as a failure (or as reported, when it
/// carries no threshold) with the exception text in the note.
VerificationReport run_verification(const Config& cfg);

}  // namespace wmlab
