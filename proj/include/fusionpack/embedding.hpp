#pragma once

#include "fusionpack/numerics.hpp"
#include "fusionpack/projection.hpp"

#include <cstddef>
#include <vector>

namespace fusionpack {

/// d = m(m+1)/2 - 1 over R, m^2 - 1 over C.
std::size_t embedding_dimension(std::size_t m, Field field);

/// Squared radius l(m - l)/m of the traceless image of a rank-l projection.
double squared_radius(std::size_t m, std::size_t l);

/// Traceless Hermitian m x m matrices with a fixed generalized Gell-Mann
/// orthonormal basis, identified with R^d.
///
/// Basis order: symmetric pairs (E_jk + E_kj)/sqrt2 for j < k in lexicographic
/// order; over C, antisymmetric pairs (-i E_jk + i E_kj)/sqrt2 in the same
/// order; then diagonal levels (E_00 + ... + E_{l-1,l-1} - l E_ll)/sqrt(l(l+1))
/// for l = 1..m-1.
class EmbeddingSpace {
public:
    std::size_t m() const noexcept { return m_; }
    Field field() const noexcept { return field_; }
    std::size_t dimension() const noexcept { return d_; }
    /// i-th basis matrix, materialized on demand (the full basis is O(m^4)).
    Matrix basis_matrix(std::size_t i) const;

    /// Coordinates hs_inner(A, basis_i) of a Hermitian A, read directly from
    /// its entries.
    std::vector<double> coordinates(const Matrix& a) const;
    /// sum_i coords_i basis_i.
    Matrix synthesize(const std::vector<double>& coords) const;

private:
    friend EmbeddingSpace build_space(std::size_t m, Field field);
    EmbeddingSpace(std::size_t m, Field field);

    std::size_t m_;
    Field field_;
    enum class Kind { Symmetric, Antisymmetric, Diagonal };
    struct Element {
        Kind kind;
        std::size_t j; // row, or level for diagonals
        std::size_t k;
    };

    std::size_t d_;
    std::vector<Element> elements_;
};

/// Parameter error for m < 2.
EmbeddingSpace build_space(std::size_t m, Field field);

struct EmbeddedVector {
    std::vector<double> coords;
    std::size_t source_rank = 0;
    std::size_t source_index = 0;
};

/// Unit vector of T_l(P) = P - (l/m) I scaled by 1/r_l. Degenerate error for
/// rank 0 or m; dimension error if P does not match the space.
EmbeddedVector embed(const Projection& p, const EmbeddingSpace& space, std::size_t source_index = 0);

/// Inverse of embed: r_l * synthesize(coords) + (l/m) I.
Matrix reconstruct(const EmbeddedVector& v, const EmbeddingSpace& space);

/// Embedded inner product from traces:
/// sqrt(m^2 / (lP lQ (m-lP)(m-lQ))) * (tr(PQ) - lP lQ/m).
double embedded_inner_from_trace(double trace_pq, std::size_t m, std::size_t lp, std::size_t lq);

/// Degenerate error if either rank is 0 or m.
double embedded_inner(const Projection& p, const Projection& q, const EmbeddingSpace& space);

/// ||embed(P) - embed(Q)|| > eps_abs for projections of different rank; images
/// of different ranks never meet, so false signals a bug. Parameter error for
/// equal ranks.
bool check_image_disjointness(const Projection& p, const Projection& q, const EmbeddingSpace& space,
                              const Tolerance& tol);

double euclidean_dot(const std::vector<double>& a, const std::vector<double>& b);

} // namespace fusionpack
