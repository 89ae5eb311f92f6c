#include "bap/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace bap {

Pair prox_norm_diff(double alpha, const Pair& z) {
  if (alpha <= 0.0) throw std::invalid_argument("prox_norm_diff: alpha <= 0");
  double nd2 = 0.0;
  for (std::size_t j = 0; j < z.x.size(); ++j) {
    double d = z.x[j] - z.y[j];
    nd2 += d * d;
  }
  double f = 1.0 / std::max(2.0, std::sqrt(nd2) / alpha);
  Pair r = z;
  for (std::size_t j = 0; j < r.x.size(); ++j) {
    double d = z.x[j] - z.y[j];
    r.x[j] -= f * d;
    r.y[j] += f * d;
  }
  return r;
}

Pair prox_sqnorm_diff(double alpha, const Pair& z) {
  if (alpha <= 0.0) throw std::invalid_argument("prox_sqnorm_diff: alpha <= 0");
  double c = 1.0 / (2.0 * alpha + 1.0);
  Pair r = z;
  for (std::size_t j = 0; j < r.x.size(); ++j) {
    r.x[j] = c * ((1.0 + alpha) * z.x[j] + alpha * z.y[j]);
    r.y[j] = c * (alpha * z.x[j] + (1.0 + alpha) * z.y[j]);
  }
  return r;
}

Pair argmax_dual(double alpha, double eps, const Pair& s) {
  if (alpha <= 0.0 || eps <= 0.0)
    throw std::invalid_argument("argmax_dual: need alpha > 0 and eps > 0");
  double c = 1.0 / ((2.0 * alpha + eps) * eps);
  Pair r = s;
  for (std::size_t j = 0; j < r.x.size(); ++j) {
    r.x[j] = c * ((alpha + eps) * s.x[j] + alpha * s.y[j]);
    r.y[j] = c * ((alpha + eps) * s.y[j] + alpha * s.x[j]);
  }
  return r;
}

Vec sign_vec(const Vec& w) {
  double n = norm(w);
  if (n == 0.0) return Vec(w.size(), 0.0);
  Vec r = w;
  for (double& x : r) x /= n;
  return r;
}

Pair subgrad_norm_diff(double alpha, const Pair& z) {
  if (alpha <= 0.0) throw std::invalid_argument("subgrad_norm_diff: alpha <= 0");
  Vec d(z.x.size());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = z.x[j] - z.y[j];
  Vec s = sign_vec(d);
  Pair g;
  g.x.resize(s.size());
  g.y.resize(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    g.x[j] = alpha * s[j];
    g.y[j] = -alpha * s[j];
  }
  return g;
}

Pair project_product(const ProductConstraint& c, const Pair& z) {
  return Pair{project(c.a_side, z.x), project(c.b_side, z.y)};
}

double distance_product(const ProductConstraint& c, const Pair& z) {
  double da = distance(c.a_side, z.x);
  double db = distance(c.b_side, z.y);
  return std::sqrt(da * da + db * db);
}

Pair subgrad_distance(double L, const ProductConstraint& c, const Pair& z) {
  if (L <= 0.0) throw std::invalid_argument("subgrad_distance: L <= 0");
  Pair p = project_product(c, z);
  double n2 = 0.0;
  for (std::size_t j = 0; j < z.x.size(); ++j) {
    double dx = z.x[j] - p.x[j], dy = z.y[j] - p.y[j];
    n2 += dx * dx + dy * dy;
  }
  double n = std::sqrt(n2);
  Pair g = zero_pair(z.x.size());
  if (n > 0.0) {
    for (std::size_t j = 0; j < z.x.size(); ++j) {
      g.x[j] = L * (z.x[j] - p.x[j]) / n;
      g.y[j] = L * (z.y[j] - p.y[j]) / n;
    }
  }
  return g;
}

}  // namespace bap
