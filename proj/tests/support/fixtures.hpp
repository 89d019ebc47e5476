#pragma once

// Test-only inputs the library does not generate, plus brute-force oracles
// that avoid the library code paths they check.

#include "fusionpack/designs.hpp"
#include "fusionpack/embedding.hpp"
#include "fusionpack/mubs.hpp"
#include "fusionpack/numerics.hpp"

#include <random>
#include <vector>

namespace fixtures {

using namespace fusionpack;

// 9 real MUBs in R^16: the standard basis plus one basis per member of a
// Kerdock set of 8 alternating forms on GF(2)^4, found by search.
MubFamily kerdock_real16();

// 9 MUBs in C^8: the standard basis plus i^{x^T S x} (-1)^{b.x} / sqrt8 over
// 8 symmetric binary matrices with pairwise nonsingular differences.
MubFamily quaternary_c8();

// Symmetric (16,6,2) design: translates of {x : x1x2 + x3x4 = 1} in GF(2)^4.
BlockDesign difference_set_16_6_2();

// Symmetric (p, (p-1)/2, (p-3)/4) design from the quadratic residues mod a
// prime p = 3 mod 4.
BlockDesign quadratic_residue_design(std::size_t p);

// m blocks {j}.
BlockDesign singletons(std::size_t m);

BlockDesign fano();

// Naive O(m^3) matrix product trace, real part.
double naive_trace_product(const Matrix& a, const Matrix& b);

// Coordinates from explicit basis matrices and hs_inner, normalized by the
// radius; independent of EmbeddingSpace::coordinates.
std::vector<double> naive_embedded_coords(const Matrix& p, std::size_t rank, const EmbeddingSpace& space);

Matrix random_hermitian(std::size_t m, Field field, std::mt19937_64& rng);

double max_abs_diff(const Matrix& a, const Matrix& b);

// Exact GF(2) rank of a square 0/1 matrix given by row bitmasks.
std::size_t gf2_rank(std::vector<unsigned> rows);

} // namespace fixtures
