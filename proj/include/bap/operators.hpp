#pragma once

#include "bap/problem.hpp"
#include "bap/vec.hpp"

namespace bap {

// Prox of alpha*|x - y| at z: moves both components toward each other along
// x - y by min(|x-y|/2, alpha).
Pair prox_norm_diff(double alpha, const Pair& z);

// Prox of (alpha/2)*|x - y|^2 at z: the linear map
// (1/(2a+1)) * ((1+a)x + a y, a x + (1+a)y).
Pair prox_sqnorm_diff(double alpha, const Pair& z);

// Unique maximizer of <s, z> - (alpha/2)|x-y|^2 - (eps/2)|z|^2 for s=(u,v):
// (1/((2a+e)e)) * ((a+e)u + a v, (a+e)v + a u).
Pair argmax_dual(double alpha, double eps, const Pair& s);

// w/|w| for w != 0, else 0 (the single-valued signum selection).
Vec sign_vec(const Vec& w);

// alpha * (sign_vec(x-y), -sign_vec(x-y)); a subgradient of alpha*|x-y|.
Pair subgrad_norm_diff(double alpha, const Pair& z);

// (P_A x, P_B y); counts as two unit operations in the harness.
Pair project_product(const ProductConstraint& c, const Pair& z);

// sqrt(d_A(x)^2 + d_B(y)^2), the distance to A x B in the product norm.
double distance_product(const ProductConstraint& c, const Pair& z);

// L * (z - P_C z)/|z - P_C z| with the norm over the whole pair difference;
// zero pair when z is feasible. A subgradient of L*d_C.
Pair subgrad_distance(double L, const ProductConstraint& c, const Pair& z);

}  // namespace bap
