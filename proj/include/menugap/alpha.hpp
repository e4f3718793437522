#pragma once

namespace menugap {

/// Closed enclosure of a real constant: lo <= value <= hi.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
};

/// Certified enclosure of alpha = sum_{l>=2} 1/(l ln^2 l).
///
/// Partial sums are taken until the analytic tail sandwich
///   1/ln(L+1) <= sum_{l>L} 1/(l ln^2 l) <= 1/ln(L)
/// plus a float-rounding margin brings the width at or below `tolerance`.
/// If the requested tolerance is below what double precision can certify,
/// the best achievable enclosure is returned (check width() on the result).
Interval alpha_enclosure(double tolerance);

}  // namespace menugap
