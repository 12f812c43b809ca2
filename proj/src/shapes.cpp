#include "pairdepth/shapes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "pairdepth/parallel.hpp"
#include "pairdepth/rng.hpp"

namespace pairdepth {

namespace {

constexpr double kSegmentTolerance = 1e-9;

double parse_real(std::string_view text, std::string_view spec) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw Error("malformed shape parameter in '" + std::string(spec) + "'");
  }
  return value;
}

bool same_point(Coords a, Coords b) { return std::equal(a.begin(), a.end(), b.begin(), b.end()); }

bool lexicographically_less(Coords a, Coords b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

PairShape::PairShape(ShapeKind kind, double param) : kind_(kind), param_(param) {
  if (kind == ShapeKind::Lens) {
    const double c = std::cos(param);
    // cos(pi/2) evaluates to ~6e-17; snap so lens:pi/2 is exactly the ball predicate.
    cos_param_ = std::abs(c) < 1e-15 ? 0.0 : c;
  }
}

PairShape PairShape::lens(double angle) {
  if (!(angle >= 0.0 && angle < std::numbers::pi)) {
    throw Error("lens angle must lie in [0, pi) radians");
  }
  return PairShape(ShapeKind::Lens, angle);
}

PairShape PairShape::ellipsoid(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw Error("ellipsoid parameter must be positive");
  return PairShape(ShapeKind::Ellipsoid, a);
}

PairShape PairShape::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const bool has_param = colon != std::string_view::npos;
  auto no_param = [&](PairShape s) {
    if (has_param) throw Error("shape '" + std::string(name) + "' takes no parameter");
    return s;
  };
  auto param = [&] {
    if (!has_param) throw Error("shape '" + std::string(name) + "' needs a parameter, e.g. " +
                                std::string(name) + ":0.5");
    return parse_real(spec.substr(colon + 1), spec);
  };
  if (name == "ball") return no_param(ball());
  if (name == "box") return no_param(box());
  if (name == "segment") return no_param(segment());
  if (name == "lens") return lens(param());
  if (name == "ellipsoid") return ellipsoid(param());
  throw Error("unknown shape '" + std::string(spec) +
              "' (expected ball, lens:<a>, ellipsoid:<a>, box or segment)");
}

std::string PairShape::spec() const {
  char buf[64];
  switch (kind_) {
    case ShapeKind::Ball: return "ball";
    case ShapeKind::Box: return "box";
    case ShapeKind::Segment: return "segment";
    case ShapeKind::Lens:
      std::snprintf(buf, sizeof buf, "lens:%.17g", param_);
      return buf;
    case ShapeKind::Ellipsoid:
      std::snprintf(buf, sizeof buf, "ellipsoid:%.17g", param_);
      return buf;
  }
  return "?";
}

bool PairShape::is_t_shape() const {
  return kind_ == ShapeKind::Ball || kind_ == ShapeKind::Lens || kind_ == ShapeKind::Ellipsoid;
}

bool PairShape::contains(Coords z, Coords x, Coords y) const {
  const std::size_t n = z.size();
  if (x.size() != n || y.size() != n) {
    require_same_dim(x.size(), n, "member");
    require_same_dim(y.size(), n, "member");
  }
  if (same_point(x, y)) return same_point(z, x);

  switch (kind_) {
    case ShapeKind::Ball: {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += (x[i] - z[i]) * (y[i] - z[i]);
      return s <= 0.0;
    }
    case ShapeKind::Lens: {
      if (param_ == 0.0) return true;
      if (same_point(z, x) || same_point(z, y)) return true;
      double uv = 0.0, uu = 0.0, vv = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double u = x[i] - z[i];
        const double v = y[i] - z[i];
        uv += u * v;
        uu += u * u;
        vv += v * v;
      }
      if (cos_param_ == 0.0) return uv <= 0.0;
      return uv <= cos_param_ * std::sqrt(uu * vv);
    }
    case ShapeKind::Ellipsoid: {
      double zx = 0.0, zy = 0.0, xy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        zx += (z[i] - x[i]) * (z[i] - x[i]);
        zy += (z[i] - y[i]) * (z[i] - y[i]);
        xy += (x[i] - y[i]) * (x[i] - y[i]);
      }
      return std::sqrt(zx) + std::sqrt(zy) <= (1.0 + param_) * std::sqrt(xy);
    }
    case ShapeKind::Box: {
      for (std::size_t i = 0; i < n; ++i) {
        const double lo = std::min(x[i], y[i]);
        const double hi = std::max(x[i], y[i]);
        if (z[i] < lo || z[i] > hi) return false;
      }
      return true;
    }
    case ShapeKind::Segment: {
      // Canonical endpoint order keeps the predicate bitwise symmetric.
      const Coords a = lexicographically_less(y, x) ? y : x;
      const Coords b = lexicographically_less(y, x) ? x : y;
      double ww = 0.0, zw = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double w = b[i] - a[i];
        ww += w * w;
        zw += (z[i] - a[i]) * w;
      }
      const double t = zw / ww;
      if (t < 0.0 || t > 1.0) return false;
      double off = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = z[i] - (a[i] + t * (b[i] - a[i]));
        off += r * r;
      }
      return std::sqrt(off) <= kSegmentTolerance * std::sqrt(ww);
    }
  }
  return false;
}

bool member(const PairShape& shape, Coords z, Coords x, Coords y) { return shape.contains(z, x, y); }

TEstimate estimate_t(const PairShape& shape, std::size_t dim, std::size_t samples, std::size_t radii,
                     std::uint64_t seed) {
  if (!shape.is_t_shape()) {
    throw Error("shape '" + shape.spec() +
                "' is not a t-shape (boxes can be arbitrarily flat, segments have zero volume)");
  }
  if (dim == 0) throw Error("dimension must be positive");
  if (samples == 0 || radii == 0) throw Error("estimate_t needs at least one sample and one radius");

  std::vector<double> x(dim, 0.0);
  x[0] = 1.0;
  const std::vector<double> y(dim, 0.0);

  std::vector<RadiusFraction> rows(radii);
  parallel_for(radii, [&](std::size_t k) {
    const double r = radii == 1 ? 1.0
                                : std::pow(1000.0, -static_cast<double>(k) / static_cast<double>(radii - 1));
    Rng rng = Rng::derive(seed, k);
    std::vector<double> p(dim);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
      double norm2 = 0.0;
      do {
        norm2 = 0.0;
        for (auto& v : p) {
          v = rng.normal();
          norm2 += v * v;
        }
      } while (norm2 == 0.0);
      const double scale = r * std::pow(rng.uniform(), 1.0 / static_cast<double>(dim)) / std::sqrt(norm2);
      for (auto& v : p) v *= scale;
      if (shape.contains(p, x, y)) ++hits;
    }
    rows[k] = {r, static_cast<double>(hits) / static_cast<double>(samples)};
  });

  TEstimate out{shape, dim, 0.0, samples, rows};
  const auto best = std::min_element(rows.begin(), rows.end(),
                                     [](const auto& a, const auto& b) { return a.fraction < b.fraction; });
  out.t_hat = best->fraction;
  out.argmin_radius = best->radius;
  out.ci_halfwidth = 1.96 * std::sqrt(out.t_hat * (1.0 - out.t_hat) / static_cast<double>(samples));
  return out;
}

}  // namespace pairdepth
