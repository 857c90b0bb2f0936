#include "odoni/newton.hpp"

#include <stdexcept>

namespace odoni {

std::vector<NewtonSegment> lower_hull_segments(
    const std::vector<std::pair<long, Rational>>& anchors) {
  for (std::size_t i = 1; i < anchors.size(); ++i) {
    if (anchors[i - 1].first >= anchors[i].first)
      throw std::domain_error("lower_hull_segments: indices must be strictly increasing");
  }
  if (anchors.size() < 2) return {};
  // Monotone chain; popping on equal slopes merges collinear anchors.
  std::vector<std::pair<long, Rational>> hull;
  for (const auto& pt : anchors) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      // slope(a,b) >= slope(b,pt) means b is not a lower-hull vertex.
      Rational lhs = (b.second - a.second) * Rational(pt.first - b.first);
      Rational rhs = (pt.second - b.second) * Rational(b.first - a.first);
      if (lhs >= rhs)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  std::vector<NewtonSegment> segs;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    Rational slope =
        (hull[i].second - hull[i - 1].second) / Rational(hull[i].first - hull[i - 1].first);
    segs.push_back({slope, static_cast<unsigned long>(hull[i].first - hull[i - 1].first)});
  }
  return segs;
}

NewtonPolygon newton_polygon(const PolyRat& f, const BigInt& p) {
  if (f.is_zero()) throw std::domain_error("newton_polygon of the zero polynomial");
  NewtonPolygon np;
  bool seen_nonzero = false;
  for (int i = 0; i <= f.degree(); ++i) {
    const Rational& c = f.coeff(i);
    if (c == 0) {
      if (!seen_nonzero) ++np.zero_root_multiplicity;
      continue;  // infinite valuation anchors never lie on the lower hull
    }
    seen_nonzero = true;
    np.anchors.push_back({i, Rational(vp(c, p).value())});
  }
  np.segments = lower_hull_segments(np.anchors);
  return np;
}

RootValuations root_valuations(const PolyRat& f, const BigInt& p) {
  NewtonPolygon np = newton_polygon(f, p);
  RootValuations rv;
  rv.zero_roots = np.zero_root_multiplicity;
  for (auto it = np.segments.rbegin(); it != np.segments.rend(); ++it)
    rv.finite.push_back({-it->slope, it->length});
  return rv;
}

bool is_eisenstein(const PolyRat& f, const BigInt& p) {
  if (f.degree() < 1 || !f.is_monic())
    throw std::domain_error("is_eisenstein requires a monic polynomial of degree >= 1");
  for (int i = 0; i <= f.degree(); ++i) {
    if (f.coeff(i) != 0 && vp(f.coeff(i), p).value() < 0)
      throw std::domain_error("is_eisenstein requires a p-integral polynomial");
  }
  for (int i = 0; i < f.degree(); ++i) {
    Valuation v = vp(f.coeff(i), p);
    if (!(v >= 1)) return false;
  }
  Valuation v0 = vp(f.coeff(0), p);
  return !v0.is_infinity() && v0.value() == 1;
}

}  // namespace odoni
