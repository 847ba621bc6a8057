#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace coopetition {

// Exact rational scalar; every probability, utility, threshold and verdict
// comparison in the engine runs on these.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// std::min/max choke on GMP expression templates; these materialize first.
inline Rat rmin(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rmax(const Rat& a, const Rat& b) { return a > b ? a : b; }

/// Parses "p/q" or "p" (q > 0 after sign normalization). Throws
/// EngineError(ParseError) on anything else.
Rat parse_rational(const std::string& text);

/// Canonical rendering: "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rat& r);

std::string to_string(const std::vector<Rat>& rs);

}  // namespace coopetition
