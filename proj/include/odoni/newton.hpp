#pragma once

#include <utility>
#include <vector>

#include "odoni/exact.hpp"
#include "odoni/poly.hpp"

namespace odoni {

struct NewtonSegment {
  Rational slope;
  unsigned long length;  // horizontal width
  bool operator==(const NewtonSegment&) const = default;
};

// Convention used throughout: the polygon is the lower convex hull of the
// anchor set {(i, vp(a_i)) : a_i != 0}, read left to right, and a segment of
// slope s and length l certifies l roots of valuation -s. The zero root
// (trailing X^e factor) is excluded from the hull and reported separately.
struct NewtonPolygon {
  std::vector<std::pair<long, Rational>> anchors;  // nonzero coefficients only
  std::vector<NewtonSegment> segments;             // slopes strictly increasing
  unsigned long zero_root_multiplicity = 0;
};

/// Lower hull of arbitrary anchor points (indices strictly increasing).
/// Shared with the valuation-space checks in the certificates module.
std::vector<NewtonSegment> lower_hull_segments(
    const std::vector<std::pair<long, Rational>>& anchors);

NewtonPolygon newton_polygon(const PolyRat& f, const BigInt& p);

struct RootValuations {
  std::vector<std::pair<Rational, unsigned long>> finite;  // (valuation, multiplicity)
  unsigned long zero_roots = 0;
};
RootValuations root_valuations(const PolyRat& f, const BigInt& p);

/// true iff f is monic, p-integral, vp(a_i) >= 1 for all i < deg f and
/// vp(a_0) = 1. Non-monic or non-p-integral input is a domain error.
bool is_eisenstein(const PolyRat& f, const BigInt& p);

}  // namespace odoni
