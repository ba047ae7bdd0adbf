#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "fractalsep/params.hpp"

namespace fractalsep {

using BigInt = boost::multiprecision::cpp_int;

// Number of admissible digit columns: a column is a d-tuple of base-b digits
// with at most m entries in A.  The level-k vertex count is this value to the
// k-th power because the admissibility test is independent per digit position.
BigInt vertex_column_configs(const FractalParams& p);

// |V_k| = vertex_column_configs(p)^k.
BigInt vertex_count_formula(const FractalParams& p, int k);

// Admissible digit columns over d-1 coordinates with at most m-1 entries in A.
// An axis line is fully contained in the level-k piece exactly when each digit
// column of its d-1 fixed coordinates has at most m-1 entries in A, so the
// number of complete lines per direction is this value to the k-th power.
// With A empty every line is complete and the count is b^{d-1}; otherwise
// m = 0 admits no line and the count is 0.
BigInt line_column_configs(const FractalParams& p);

// Complete lines per axis direction at level k: line_column_configs(p)^k,
// with the 0^0 = 1 convention (the level-0 line is the single vertex).
BigInt complete_lines_count(const FractalParams& p, int k);

// Admissible digit columns over d-1 coordinates with at most m entries in A.
// A plane {x_i = c} meets the level-k piece in at most this value to the k-th
// power many vertices, whatever c is.
BigInt plane_column_configs(const FractalParams& p);

// Exponent E = log N / (log N + log b) where N = line_column_configs.
// The complete-lines subgraph has ~ (N b)^k vertices and balanced cuts of
// size ~ N^k, so cut sizes scale like n^E.  N = 1 gives 0; N = 0 throws
// std::domain_error.
double separation_exponent(const FractalParams& p);

// Upper bound on the number of vertices the two-phase plane cutter removes
// from a graph on at most (bN)^{k+1} vertices:
//   2 d b N^{k+1}  +  2 d b^{d-1} (N^{k-1} + ... + N + 1)  +  1
// with N = line_column_configs.  The first term covers the pigeonhole
// phase (2d planes of <= b N^{k+1} vertices), the sum covers the recursive
// phase (2d planes of <= b^{d-1} N^j vertices at depth j).  Requires N >= 1.
BigInt constructive_bound(const FractalParams& p, int k);

// Leading coefficient of constructive_bound as a multiple of N^k:
//   C = 2 d b N + 2 d b^{d-1} / (N - 1).
// Requires N >= 2 (the geometric sum is linear in k otherwise).
double constructive_coefficient(const FractalParams& p);

BigInt binomial(int n, int r);

}  // namespace fractalsep
