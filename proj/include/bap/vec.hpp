#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace bap {

using Vec = std::vector<double>;

// A point z = (x, y) in the product space X = Y x Y.
struct Pair {
  Vec x;
  Vec y;

  std::size_t dim() const { return x.size(); }
};

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

// sqrt(|x|^2 + |y|^2), the norm induced on X.
inline double pair_norm(const Pair& z) {
  return std::sqrt(dot(z.x, z.x) + dot(z.y, z.y));
}

inline Pair pair_sub(const Pair& a, const Pair& b) {
  Pair r = a;
  for (std::size_t j = 0; j < r.x.size(); ++j) r.x[j] -= b.x[j];
  for (std::size_t j = 0; j < r.y.size(); ++j) r.y[j] -= b.y[j];
  return r;
}

inline double pair_dist(const Pair& a, const Pair& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.x.size(); ++j) {
    double d = a.x[j] - b.x[j];
    s += d * d;
  }
  for (std::size_t j = 0; j < a.y.size(); ++j) {
    double d = a.y[j] - b.y[j];
    s += d * d;
  }
  return std::sqrt(s);
}

inline Pair zero_pair(std::size_t n) { return Pair{Vec(n, 0.0), Vec(n, 0.0)}; }

}  // namespace bap
