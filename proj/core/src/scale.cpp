// Copyright 2026 The gdm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gdm/scale.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "gdm/dyadic_spike.hpp"
#include "gdm/errors.hpp"

namespace gdm {

namespace {

constexpr double kVolEps = 1e-150;
constexpr double kLogDerivCap = 700.0;  // exp overflow guard on w

// ---------------------------------------------------------------------------
// Embedded Cash-Karp RK45 for the scale ODE
//   w' = -2 mu(y) / sigma(y)^2,   s' = exp(w).
// ---------------------------------------------------------------------------

struct OdeState {
  double w = 0.0;
  double s = 0.0;
};

struct ScaleOde {
  const Coefficient& drift;
  const Coefficient& vol;

  void eval(double y, const OdeState& st, double* dw, double* ds) const {
    const double sg = vol(y);
    if (std::fabs(sg) < kVolEps) throw VolVanishes(y);
    *dw = -2.0 * drift(y) / (sg * sg);
    if (st.w > kLogDerivCap) {
      throw QuadratureDiverged(
          "scale derivative overflows on a compact; coefficients violate "
          "local integrability near y = " + std::to_string(y));
    }
    *ds = std::exp(st.w);
  }
};

OdeState rk45_advance(const ScaleOde& ode, OdeState st, double from, double to) {
  if (from == to) return st;
  const double span = to - from;
  double h = span / 16.0;
  double y = from;
  const double hmin = std::fabs(span) * 1e-14 + 1e-300;
  constexpr double rtol = 1e-11, atol = 1e-14;

  // Cash-Karp tableau.
  static const double b21 = 1.0 / 5;
  static const double b31 = 3.0 / 40, b32 = 9.0 / 40;
  static const double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
  static const double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27,
                      b54 = 35.0 / 27;
  static const double b61 = 1631.0 / 55296, b62 = 175.0 / 512,
                      b63 = 575.0 / 13824, b64 = 44275.0 / 110592,
                      b65 = 253.0 / 4096;
  static const double a2 = 1.0 / 5, a3 = 3.0 / 10, a4 = 3.0 / 5, a5 = 1.0,
                      a6 = 7.0 / 8;
  static const double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594,
                      c6 = 512.0 / 1771;
  static const double d1 = c1 - 2825.0 / 27648, d3 = c3 - 18575.0 / 48384,
                      d4 = c4 - 13525.0 / 55296, d5 = -277.0 / 14336,
                      d6 = c6 - 1.0 / 4;

  int guard = 0;
  while ((span > 0 && y < to) || (span < 0 && y > to)) {
    if (++guard > 2'000'000)
      throw QuadratureDiverged("scale ODE step budget exhausted");
    if ((span > 0 && y + h > to) || (span < 0 && y + h < to)) h = to - y;

    double k1w, k1s, k2w, k2s, k3w, k3s, k4w, k4s, k5w, k5s, k6w, k6s;
    OdeState t;
    ode.eval(y, st, &k1w, &k1s);
    t = {st.w + h * b21 * k1w, st.s + h * b21 * k1s};
    ode.eval(y + a2 * h, t, &k2w, &k2s);
    t = {st.w + h * (b31 * k1w + b32 * k2w), st.s + h * (b31 * k1s + b32 * k2s)};
    ode.eval(y + a3 * h, t, &k3w, &k3s);
    t = {st.w + h * (b41 * k1w + b42 * k2w + b43 * k3w),
         st.s + h * (b41 * k1s + b42 * k2s + b43 * k3s)};
    ode.eval(y + a4 * h, t, &k4w, &k4s);
    t = {st.w + h * (b51 * k1w + b52 * k2w + b53 * k3w + b54 * k4w),
         st.s + h * (b51 * k1s + b52 * k2s + b53 * k3s + b54 * k4s)};
    ode.eval(y + a5 * h, t, &k5w, &k5s);
    t = {st.w + h * (b61 * k1w + b62 * k2w + b63 * k3w + b64 * k4w + b65 * k5w),
         st.s + h * (b61 * k1s + b62 * k2s + b63 * k3s + b64 * k4s + b65 * k5s)};
    ode.eval(y + a6 * h, t, &k6w, &k6s);

    const double dw5 = h * (c1 * k1w + c3 * k3w + c4 * k4w + c6 * k6w);
    const double ds5 = h * (c1 * k1s + c3 * k3s + c4 * k4s + c6 * k6s);
    const double ew = h * (d1 * k1w + d3 * k3w + d4 * k4w + d5 * k5w + d6 * k6w);
    const double es = h * (d1 * k1s + d3 * k3s + d4 * k4s + d5 * k5s + d6 * k6s);

    const double scw = atol + rtol * std::max(std::fabs(st.w),
                                              std::fabs(st.w + dw5));
    const double scs = atol + rtol * std::max(std::fabs(st.s),
                                              std::fabs(st.s + ds5));
    const double err = std::max(std::fabs(ew) / scw, std::fabs(es) / scs);

    if (err <= 1.0 || std::fabs(h) <= hmin) {
      y += h;
      st.w += dw5;
      st.s += ds5;
      if (st.w > kLogDerivCap)
        throw QuadratureDiverged(
            "scale derivative overflows on a compact near y = " +
            std::to_string(y));
    }
    const double fac = (err > 0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(fac, 0.2, 5.0);
    if (std::fabs(h) < hmin) h = (span > 0 ? hmin : -hmin);
  }
  return st;
}

double tabulated_value(const std::vector<double>& grid,
                       const std::vector<double>& values, double x) {
  if (x <= grid.front()) return values.front();
  if (x >= grid.back()) return values.back();
  const auto it = std::upper_bound(grid.begin(), grid.end(), x);
  const size_t i = size_t(it - grid.begin()) - 1;
  const double t = (x - grid[i]) / (grid[i + 1] - grid[i]);
  return values[i] + t * (values[i + 1] - values[i]);
}

double tabulated_inverse(const std::vector<double>& grid,
                         const std::vector<double>& values, double y) {
  if (y <= values.front()) return grid.front();
  if (y >= values.back()) return grid.back();
  const auto it = std::upper_bound(values.begin(), values.end(), y);
  const size_t i = size_t(it - values.begin()) - 1;
  const double t = (y - values[i]) / (values[i + 1] - values[i]);
  return grid[i] + t * (grid[i + 1] - grid[i]);
}

}  // namespace

struct ScaleFunction::Impl {
  // skew
  double alpha = 0.0;
  // from_coefficients
  std::optional<Coefficient> drift;
  std::optional<Coefficient> vol;
  double anchor = 0.0;
  // counterexample
  bool two_sided = true;
  // tabulated
  std::vector<double> grid;
  std::vector<double> values;
  // inverse view
  std::shared_ptr<const ScaleFunction> base;
};

ScaleFunction::ScaleFunction(ScaleVariantKind kind, StateInterval domain,
                             std::shared_ptr<const Impl> impl)
    : kind_(kind), domain_(domain), impl_(std::move(impl)) {}

ScaleFunction ScaleFunction::natural(StateInterval domain) {
  return {ScaleVariantKind::kNatural, domain, std::make_shared<Impl>()};
}

ScaleFunction ScaleFunction::skew_piecewise(double alpha, StateInterval domain) {
  if (!(alpha > 0.0 && alpha < 1.0) || alpha == 0.5)
    throw BadParam("skew alpha must lie in (0,1) \\ {1/2}");
  auto impl = std::make_shared<Impl>();
  impl->alpha = alpha;
  return {ScaleVariantKind::kSkewPiecewise, domain, impl};
}

ScaleFunction ScaleFunction::from_coefficients(Coefficient drift,
                                               Coefficient vol,
                                               StateInterval domain,
                                               double anchor) {
  if (!domain.interior_contains(anchor))
    throw BadParam("anchor must lie in the interval interior");
  auto impl = std::make_shared<Impl>();
  impl->drift = std::move(drift);
  impl->vol = std::move(vol);
  impl->anchor = anchor;
  return {ScaleVariantKind::kFromCoefficients, domain, impl};
}

ScaleFunction ScaleFunction::counterexample_log(bool two_sided) {
  auto impl = std::make_shared<Impl>();
  impl->two_sided = two_sided;
  const StateInterval domain = two_sided
                                   ? StateInterval::whole_line()
                                   : StateInterval::half_line_closed_at_zero();
  return {ScaleVariantKind::kCounterexampleLog, domain, impl};
}

ScaleFunction ScaleFunction::tabulated(std::vector<double> grid,
                                       std::vector<double> values) {
  if (grid.size() != values.size() || grid.size() < 2)
    throw BadParam("tabulated scale needs matching grid/value arrays, n >= 2");
  for (size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1]))
      throw BadParam("tabulated scale grid must be strictly increasing");
    if (!(values[i] > values[i - 1]))
      throw BadParam("tabulated scale values must be strictly increasing");
  }
  const StateInterval domain{grid.front(), grid.back(), true, true};
  auto impl = std::make_shared<Impl>();
  impl->grid = std::move(grid);
  impl->values = std::move(values);
  return {ScaleVariantKind::kTabulated, domain, impl};
}

double ScaleFunction::value(double x) const {
  switch (kind_) {
    case ScaleVariantKind::kNatural:
      return x;
    case ScaleVariantKind::kSkewPiecewise:
      return x >= 0.0 ? (1.0 - impl_->alpha) * x : impl_->alpha * x;
    case ScaleVariantKind::kFromCoefficients: {
      ScaleOde ode{*impl_->drift, *impl_->vol};
      return rk45_advance(ode, {0.0, 0.0}, impl_->anchor, x).s;
    }
    case ScaleVariantKind::kCounterexampleLog:
      if (impl_->two_sided) {
        if (x == 0.0) return 0.0;
        const double mag = dyadic_spike::primitive(std::fabs(x));
        return x > 0.0 ? mag : -mag;
      }
      return dyadic_spike::primitive(x);
    case ScaleVariantKind::kTabulated:
      return tabulated_value(impl_->grid, impl_->values, x);
    case ScaleVariantKind::kInverseView:
      return impl_->base->inverse(x);
  }
  return 0.0;
}

double ScaleFunction::increment(double a, double b) const {
  if (kind_ == ScaleVariantKind::kFromCoefficients) {
    ScaleOde ode{*impl_->drift, *impl_->vol};
    // w at a first (1-dim leg), then accumulate s from a clean zero.
    OdeState at_a = rk45_advance(ode, {0.0, 0.0}, impl_->anchor, a);
    OdeState out = rk45_advance(ode, {at_a.w, 0.0}, a, b);
    return out.s;
  }
  if (kind_ == ScaleVariantKind::kCounterexampleLog && !impl_->two_sided)
    return dyadic_spike::primitive(b) - dyadic_spike::primitive(a);
  return value(b) - value(a);
}

std::vector<double> ScaleFunction::values_on_grid(
    const std::vector<double>& xs) const {
  std::vector<double> out(xs.size());
  if (kind_ != ScaleVariantKind::kFromCoefficients) {
    for (size_t i = 0; i < xs.size(); ++i) out[i] = value(xs[i]);
    return out;
  }
  for (size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] >= xs[i - 1]))
      throw BadParam("values_on_grid needs an ascending grid");
  }
  ScaleOde ode{*impl_->drift, *impl_->vol};
  // Continuation sweep: down from the anchor for the left part, up for the
  // right part, so each leg advances monotonically.
  const double anchor = impl_->anchor;
  const auto split = std::lower_bound(xs.begin(), xs.end(), anchor);
  OdeState st{0.0, 0.0};
  double at = anchor;
  for (auto it = std::make_reverse_iterator(split); it != xs.rend(); ++it) {
    st = rk45_advance(ode, st, at, *it);
    at = *it;
    out[size_t(xs.rend() - it) - 1] = st.s;
  }
  st = {0.0, 0.0};
  at = anchor;
  for (auto it = split; it != xs.end(); ++it) {
    st = rk45_advance(ode, st, at, *it);
    at = *it;
    out[size_t(it - xs.begin())] = st.s;
  }
  return out;
}

double ScaleFunction::inverse(double y) const {
  switch (kind_) {
    case ScaleVariantKind::kNatural:
      return y;
    case ScaleVariantKind::kSkewPiecewise:
      return y >= 0.0 ? y / (1.0 - impl_->alpha) : y / impl_->alpha;
    case ScaleVariantKind::kCounterexampleLog:
      if (impl_->two_sided) {
        if (y == 0.0) return 0.0;
        const double mag = dyadic_spike::primitive_inverse(std::fabs(y));
        return y > 0.0 ? mag : -mag;
      }
      return dyadic_spike::primitive_inverse(y);
    case ScaleVariantKind::kTabulated:
      return tabulated_inverse(impl_->grid, impl_->values, y);
    case ScaleVariantKind::kInverseView:
      return impl_->base->value(y);
    case ScaleVariantKind::kFromCoefficients:
      break;  // handled below
  }
  // Monotone bracketing + bisection on value().
  double lo = impl_->anchor, hi = impl_->anchor;
  double step = 1.0;
  const double l = domain_.lower(), r = domain_.upper();
  for (int i = 0; i < 200 && value(hi) < y; ++i) {
    lo = hi;
    hi = std::isfinite(r) ? std::min(r - (r - hi) / 4.0, hi + step) : hi + step;
    step *= 2.0;
  }
  step = 1.0;
  for (int i = 0; i < 200 && value(lo) > y; ++i) {
    hi = std::min(hi, lo);
    lo = std::isfinite(l) ? std::max(l + (lo - l) / 4.0, lo - step) : lo - step;
    step *= 2.0;
  }
  for (int it = 0; it < 100 && lo < hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (value(mid) < y) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double ScaleFunction::derivative_plus(double x) const {
  switch (kind_) {
    case ScaleVariantKind::kNatural:
      return 1.0;
    case ScaleVariantKind::kSkewPiecewise:
      return x >= 0.0 ? 1.0 - impl_->alpha : impl_->alpha;
    case ScaleVariantKind::kFromCoefficients: {
      ScaleOde ode{*impl_->drift, *impl_->vol};
      const double w = rk45_advance(ode, {0.0, 0.0}, impl_->anchor, x).w;
      return std::exp(w);
    }
    case ScaleVariantKind::kCounterexampleLog:
      if (x == 0.0) return kInf;
      return dyadic_spike::value(std::fabs(x));
    case ScaleVariantKind::kTabulated: {
      const auto& g = impl_->grid;
      const auto& v = impl_->values;
      auto it = std::upper_bound(g.begin(), g.end(), x);
      if (it == g.end()) --it;
      size_t i = size_t(it - g.begin());
      if (i == 0) i = 1;
      return (v[i] - v[i - 1]) / (g[i] - g[i - 1]);
    }
    case ScaleVariantKind::kInverseView: {
      const double d = impl_->base->derivative_plus(impl_->base->inverse(x));
      if (d == 0.0) return kInf;
      return std::isinf(d) ? 0.0 : 1.0 / d;
    }
  }
  return 0.0;
}

double ScaleFunction::derivative_minus(double x) const {
  switch (kind_) {
    case ScaleVariantKind::kNatural:
      return 1.0;
    case ScaleVariantKind::kSkewPiecewise:
      return x > 0.0 ? 1.0 - impl_->alpha : impl_->alpha;
    case ScaleVariantKind::kFromCoefficients:
      return derivative_plus(x);  // C^1 variant
    case ScaleVariantKind::kCounterexampleLog:
      if (x == 0.0) return kInf;
      return dyadic_spike::value(std::fabs(x));
    case ScaleVariantKind::kTabulated: {
      const auto& g = impl_->grid;
      const auto& v = impl_->values;
      auto it = std::lower_bound(g.begin(), g.end(), x);
      size_t i = size_t(it - g.begin());
      if (i == 0) i = 1;
      if (i >= g.size()) i = g.size() - 1;
      return (v[i] - v[i - 1]) / (g[i] - g[i - 1]);
    }
    case ScaleVariantKind::kInverseView: {
      const double d = impl_->base->derivative_minus(impl_->base->inverse(x));
      if (d == 0.0) return kInf;
      return std::isinf(d) ? 0.0 : 1.0 / d;
    }
  }
  return 0.0;
}

double ScaleFunction::limit_at_boundary(double b, bool from_above) const {
  switch (kind_) {
    case ScaleVariantKind::kNatural:
      return b;
    case ScaleVariantKind::kSkewPiecewise:
      if (std::isinf(b)) return b;
      return value(b);
    case ScaleVariantKind::kCounterexampleLog:
      if (std::isinf(b)) return b > 0 ? kInf : -kInf;
      return value(b);
    case ScaleVariantKind::kTabulated:
      return value(b);
    case ScaleVariantKind::kInverseView: {
      // Image endpoints of the base map back to base-domain endpoints.
      const auto& base = *impl_->base;
      return from_above ? base.domain().lower() : base.domain().upper();
    }
    case ScaleVariantKind::kFromCoefficients:
      break;
  }
  // Numeric approach along a geometric sequence.
  const double ref = impl_->anchor;
  double prev = 0.0;
  bool have_prev = false;
  double approach = std::isinf(b) ? (from_above ? -1.0 : 1.0) : b;
  for (int k = 0; k < 48; ++k) {
    double x;
    if (std::isinf(b)) {
      x = ref + (from_above ? -1.0 : 1.0) * std::ldexp(1.0, k);
    } else {
      x = b + (from_above ? 1.0 : -1.0) * std::fabs(b - ref) * std::ldexp(1.0, -k - 1);
    }
    const double v = value(x);
    if (have_prev) {
      if (std::fabs(v - prev) <= 1e-10 * (1.0 + std::fabs(v))) return v;
      if (std::fabs(v) > 1e12 * (1.0 + std::fabs(ref)))
        return v > 0 ? kInf : -kInf;
    }
    prev = v;
    have_prev = true;
  }
  (void)approach;
  return prev;
}

bool ScaleFunction::is_natural_scale() const {
  if (kind_ == ScaleVariantKind::kNatural) return true;
  if (kind_ == ScaleVariantKind::kSkewPiecewise ||
      kind_ == ScaleVariantKind::kCounterexampleLog)
    return false;
  // Sampled collinearity test on a representative compact.
  const double l = domain_.lower(), r = domain_.upper();
  double a, b;
  if (std::isfinite(l) && std::isfinite(r)) {
    a = l + 0.1 * (r - l);
    b = r - 0.1 * (r - l);
  } else if (std::isfinite(l)) {
    a = l + 0.5;
    b = l + 2.5;
  } else if (std::isfinite(r)) {
    a = r - 2.5;
    b = r - 0.5;
  } else {
    a = -1.0;
    b = 1.0;
  }
  constexpr int kPts = 17;
  std::vector<double> xs(kPts);
  for (int i = 0; i < kPts; ++i) xs[i] = a + (b - a) * i / (kPts - 1);
  const std::vector<double> vs = values_on_grid(xs);
  const double slope0 = (vs.back() - vs.front()) / (b - a);
  if (!(slope0 > 0.0)) return false;
  for (int i = 0; i + 1 < kPts; ++i) {
    const double sl = (vs[i + 1] - vs[i]) / (xs[i + 1] - xs[i]);
    if (std::fabs(sl - slope0) > 1e-9 * std::fabs(slope0)) return false;
  }
  return true;
}

double ScaleFunction::skew_alpha() const {
  if (kind_ != ScaleVariantKind::kSkewPiecewise)
    throw Error("not a skew scale");
  return impl_->alpha;
}

std::string ScaleFunction::describe() const {
  switch (kind_) {
    case ScaleVariantKind::kNatural:
      return "natural";
    case ScaleVariantKind::kSkewPiecewise:
      return "skew_piecewise(alpha=" + std::to_string(impl_->alpha) + ")";
    case ScaleVariantKind::kFromCoefficients:
      return "from_coefficients(mu=" + impl_->drift->label() +
             ", sigma=" + impl_->vol->label() +
             ", anchor=" + std::to_string(impl_->anchor) + ")";
    case ScaleVariantKind::kCounterexampleLog:
      return impl_->two_sided ? "counterexample_log(two-sided)"
                              : "counterexample_log(half-line)";
    case ScaleVariantKind::kTabulated:
      return "tabulated(" + std::to_string(impl_->grid.size()) + " points)";
    case ScaleVariantKind::kInverseView:
      return "inverse(" + impl_->base->describe() + ")";
  }
  return {};
}

ScaleFunction ScaleFunction::inverse_view() const {
  auto impl = std::make_shared<Impl>();
  impl->base = std::make_shared<ScaleFunction>(*this);
  const double lo = limit_at_boundary(domain_.lower(), true);
  const double hi = limit_at_boundary(domain_.upper(), false);
  StateInterval image{lo, hi,
                      std::isfinite(lo) && domain_.lower_included(),
                      std::isfinite(hi) && domain_.upper_included()};
  return {ScaleVariantKind::kInverseView, image, impl};
}

std::vector<double> ScaleFunction::singular_hints() const {
  if (kind_ == ScaleVariantKind::kCounterexampleLog && impl_->two_sided)
    return {0.0};
  if (kind_ == ScaleVariantKind::kInverseView) {
    // Flat points of the base become blow-ups of the inverse; none of the
    // shipped variants has them.
    return {};
  }
  return {};
}

ScaleFunction scale_from_coefficients(const Coefficient& drift,
                                      const Coefficient& vol,
                                      const StateInterval& interval,
                                      double anchor) {
  ScaleFunction s =
      ScaleFunction::from_coefficients(drift, vol, interval, anchor);
  // Probe local integrability on a compact around the anchor: a diverging
  // inner integral surfaces as VolVanishes / QuadratureDiverged here.
  const double l = interval.lower(), r = interval.upper();
  const double lo = std::isfinite(l) ? anchor - 0.9 * (anchor - l) : anchor - 2.0;
  const double hi = std::isfinite(r) ? anchor + 0.9 * (r - anchor) : anchor + 2.0;
  (void)s.increment(lo, hi);
  return s;
}

}  // namespace gdm
