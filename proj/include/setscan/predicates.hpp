#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace setscan::pred {

using Rational = boost::multiprecision::cpp_rational;

// Exact conversion; doubles are dyadic rationals.
Rational exact(double x);

// Sign of det of the d x d matrix with rows pts[i+1]-pts[0], i = 0..d-1.
// Exact: filtered double evaluation with a rational fallback. 0 means the
// d+1 points are affinely dependent.
int orient(int d, const double* const* pts);

// Is q strictly inside the circumsphere of the simplex (d+1 points)?
// Cospherical ties are broken by a symbolic perturbation of the lifted
// coordinate keyed to the global point ids, so the result is never "on".
// Returns +1 inside, -1 outside. Throws std::runtime_error when even the
// perturbed predicate is degenerate (affinely degenerate configuration).
// orient_sign is the exact orientation of the simplex in the given order.
int insphere(int d, const double* const* simplex, const int* ids, int orient_sign,
             const double* q, int qid);

// Unperturbed variant: +1 strictly inside the circumsphere, 0 exactly on it,
// -1 strictly outside. Exact.
int insphere_sign(int d, const double* const* simplex, int orient_sign, const double* q);

// Exact rank of the k vectors pts[i]-origin (dimension d), k <= d <= 4.
int affine_rank(int d, const double* origin, const double* const* pts, int k);

}  // namespace setscan::pred
