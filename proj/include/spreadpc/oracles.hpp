#pragma once

// Reference computations that share no code path with the library routines
// they are compared against. Slow by construction; small parameters only.

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "spreadpc/kernels.hpp"
#include "spreadpc/model.hpp"
#include "spreadpc/rational.hpp"

namespace spreadpc::oracle {

// D^{*n}(o) for n = 0..n_max by repeated convolution of the step
// distribution on a dense d-dimensional array (sup norm).
std::vector<Rational> dense_dstar_origin(int d, int L, int n_max);

// u^{*n}(0), n = 1..n_max, for the uniform density on [-1,1], from
// trapezoid-weighted box convolutions on grids of spacing 1/m with
// m = base_m, 2 base_m, ..., Richardson-extrapolated in 1/m.
std::vector<double> grid_uniform_center(int n_max, int base_m = 64, int levels = 5);

// Counts (n_vertices, n_edges) -> number of trees/animals containing o,
// by growing edge sets one edge at a time from {o} and de-duplicating.
std::map<std::pair<int, int>, unsigned long> brute_force_census(Model model, int d, int L,
                                                                int max_vertices);

// sum_{x in Lambda} cos(k.x) / |Lambda| by direct lattice summation.
double direct_dhat(int d, int L, Norm norm, std::span<const double> k);

}  // namespace spreadpc::oracle
