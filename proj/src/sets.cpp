#include "bap/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool all_finite(const Vec& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

Vec project_halfspace(const Halfspace& h, const Vec& w) {
  double v = dot(h.normal, w) - h.offset;
  if (v <= 0.0) return w;
  double aa = dot(h.normal, h.normal);
  Vec r = w;
  double t = v / aa;
  for (std::size_t j = 0; j < r.size(); ++j) r[j] -= t * h.normal[j];
  return r;
}

Vec project_box(const Box& b, const Vec& w) {
  Vec r = w;
  for (std::size_t j = 0; j < r.size(); ++j)
    r[j] = std::min(std::max(r[j], b.lower[j]), b.upper[j]);
  return r;
}

Vec project_ball(const Ball& b, const Vec& w) {
  double d2 = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    double d = w[j] - b.center[j];
    d2 += d * d;
  }
  double d = std::sqrt(d2);
  if (d <= b.radius) return w;
  Vec r = b.center;
  double t = b.radius / d;
  for (std::size_t j = 0; j < r.size(); ++j) r[j] += t * (w[j] - b.center[j]);
  return r;
}

// Slab endpoints of two parallel halfspaces along the unit direction
// u = a1/|a1|: the feasible interval for <u, w>. hi comes from the first
// halfspace, lo (or a second upper bound) from the second depending on
// orientation. Returns {lo, hi}; lo = -inf for nested same-direction pairs.
struct SlabInterval {
  double lo, hi;
};

SlabInterval parallel_interval(const PairedHalfspaces& p) {
  double n1 = norm(p.first.normal);
  double r = dot(p.second.normal, p.first.normal) / n1;  // <a2, u>, signed
  double c1 = p.first.offset / n1;                       // <u,w> <= c1
  if (r > 0.0) return {-kInf, std::min(c1, p.second.offset / r)};
  return {p.second.offset / r, c1};  // dividing by r < 0 flips the inequality
}

Vec project_paired(const PairedHalfspaces& p, const Vec& w) {
  const Vec& a1 = p.first.normal;
  const Vec& a2 = p.second.normal;
  double s1 = dot(a1, w) - p.first.offset;
  double s2 = dot(a2, w) - p.second.offset;
  double tol1 = 1e-12 * norm(a1);
  double tol2 = 1e-12 * norm(a2);
  if (s1 <= tol1 && s2 <= tol2) return w;

  double g11 = dot(a1, a1), g22 = dot(a2, a2), g12 = dot(a1, a2);
  if (s1 > 0.0) {
    double t = s1 / g11;
    if (s2 - t * g12 <= tol2) {
      Vec r = w;
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= t * a1[j];
      return r;
    }
  }
  if (s2 > 0.0) {
    double t = s2 / g22;
    if (s1 - t * g12 <= tol1) {
      Vec r = w;
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= t * a2[j];
      return r;
    }
  }

  double det = g11 * g22 - g12 * g12;
  if (det > 1e-12 * g11 * g22) {
    // Project onto the intersection of the two boundary hyperplanes.
    double c1 = (g22 * s1 - g12 * s2) / det;
    double c2 = (g11 * s2 - g12 * s1) / det;
    Vec r = w;
    for (std::size_t j = 0; j < r.size(); ++j)
      r[j] -= c1 * a1[j] + c2 * a2[j];
    return r;
  }

  // Parallel normals: clamp the u-coordinate into the feasible interval
  // (nested halfspaces reduce to the tighter bound).
  auto [lo, hi] = parallel_interval(p);
  if (lo > hi)
    throw std::invalid_argument("paired halfspaces: empty intersection");
  double n1 = norm(a1);
  double pos = dot(a1, w) / n1;
  double clamped = std::min(std::max(pos, lo), hi);
  Vec r = w;
  double t = (clamped - pos) / n1;
  for (std::size_t j = 0; j < r.size(); ++j) r[j] += t * a1[j];
  return r;
}

void validate_halfspace(const Halfspace& h) {
  if (h.normal.empty()) throw std::invalid_argument("halfspace: empty normal");
  if (!all_finite(h.normal) || !std::isfinite(h.offset))
    throw std::invalid_argument("halfspace: non-finite data");
  if (norm(h.normal) == 0.0)
    throw std::invalid_argument("halfspace: zero normal");
}

}  // namespace

std::size_t set_dim(const SetSpec& s) {
  return std::visit(
      [](const auto& v) -> std::size_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Halfspace>) return v.normal.size();
        if constexpr (std::is_same_v<T, Box>) return v.lower.size();
        if constexpr (std::is_same_v<T, Ball>) return v.center.size();
        if constexpr (std::is_same_v<T, PairedHalfspaces>)
          return v.first.normal.size();
      },
      s);
}

long long unit_cost(const SetSpec& s) {
  return std::holds_alternative<PairedHalfspaces>(s) ? 2 : 1;
}

void validate_set(const SetSpec& s, std::size_t expected_dim) {
  if (expected_dim != 0 && set_dim(s) != expected_dim)
    throw std::invalid_argument("set: unexpected dimension");
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Halfspace>) {
          validate_halfspace(v);
        } else if constexpr (std::is_same_v<T, Box>) {
          if (v.lower.size() != v.upper.size() || v.lower.empty())
            throw std::invalid_argument("box: bad bound lengths");
          for (std::size_t j = 0; j < v.lower.size(); ++j) {
            double lo = v.lower[j], hi = v.upper[j];
            if (std::isnan(lo) || std::isnan(hi))
              throw std::invalid_argument("box: NaN bound");
            if (lo == kInf || hi == -kInf || lo > hi)
              throw std::invalid_argument("box: empty interval");
          }
        } else if constexpr (std::is_same_v<T, Ball>) {
          if (v.center.empty() || !all_finite(v.center) ||
              !std::isfinite(v.radius))
            throw std::invalid_argument("ball: non-finite data");
          if (v.radius <= 0.0)
            throw std::invalid_argument("ball: radius must be positive");
        } else if constexpr (std::is_same_v<T, PairedHalfspaces>) {
          validate_halfspace(v.first);
          validate_halfspace(v.second);
          if (v.first.normal.size() != v.second.normal.size())
            throw std::invalid_argument("paired halfspaces: dimension mismatch");
          double g11 = dot(v.first.normal, v.first.normal);
          double g22 = dot(v.second.normal, v.second.normal);
          double g12 = dot(v.first.normal, v.second.normal);
          double det = g11 * g22 - g12 * g12;
          if (det <= 1e-12 * g11 * g22) {
            auto [lo, hi] = parallel_interval(v);
            if (lo > hi)
              throw std::invalid_argument(
                  "paired halfspaces: empty intersection");
          }
        }
      },
      s);
}

Vec project(const SetSpec& s, const Vec& w) {
  if (set_dim(s) != w.size())
    throw std::invalid_argument("project: dimension mismatch");
  return std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Halfspace>)
          return project_halfspace(v, w);
        else if constexpr (std::is_same_v<T, Box>)
          return project_box(v, w);
        else if constexpr (std::is_same_v<T, Ball>)
          return project_ball(v, w);
        else
          return project_paired(v, w);
      },
      s);
}

double distance(const SetSpec& s, const Vec& w) {
  Vec p = project(s, w);
  double d2 = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    double d = w[j] - p[j];
    d2 += d * d;
  }
  return std::sqrt(d2);
}

Box whole_space(std::size_t n) {
  return Box{Vec(n, -kInf), Vec(n, kInf)};
}

bool is_whole_space(const SetSpec& s) {
  const Box* b = std::get_if<Box>(&s);
  if (!b) return false;
  for (double lo : b->lower)
    if (lo != -kInf) return false;
  for (double hi : b->upper)
    if (hi != kInf) return false;
  return true;
}

}  // namespace bap
