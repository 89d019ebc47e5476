#pragma once

#include "fusionpack/designs.hpp"
#include "fusionpack/mubs.hpp"
#include "fusionpack/numerics.hpp"

#include <cstddef>
#include <optional>
#include <random>

namespace fusionpack {

/// Where a packing element came from. Coordinate projections record the basis
/// index and block; everything else is "imported".
struct Provenance {
    std::optional<std::size_t> group;       // design/partition index i
    std::optional<std::size_t> basis_index; // k
    std::optional<Block> block;             // J
    bool complemented = false;              // element is I - P of the recorded source

    static Provenance imported() { return {}; }
    bool is_imported() const noexcept { return !basis_index.has_value(); }

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Hermitian idempotent m x m matrix with its rank.
class Projection {
public:
    /// Parameter error (with the failed condition) unless is_projection accepts
    /// the matrix.
    static Projection from_matrix(Matrix matrix, const Tolerance& tol, Provenance provenance = Provenance::imported());

    /// Trusted constructor for matrices that are projections by construction.
    static Projection trusted(Matrix matrix, std::size_t rank, Provenance provenance);

    const Matrix& matrix() const noexcept { return matrix_; }
    std::size_t rank() const noexcept { return rank_; }
    std::size_t dimension() const noexcept { return matrix_.rows(); }
    const Provenance& provenance() const noexcept { return provenance_; }

    /// I - P, rank m - l.
    Projection complement() const;

private:
    Projection(Matrix matrix, std::size_t rank, Provenance provenance)
        : matrix_(std::move(matrix)), rank_(rank), provenance_(std::move(provenance))
    {
    }

    Matrix matrix_;
    std::size_t rank_;
    Provenance provenance_;
};

/// P^B_J = sum_{j in J} b_j b_j^*. Parameter error for an empty block or an
/// index outside the basis.
Projection coordinate_projection(const Basis& basis, const Block& block, Provenance provenance = {});

/// Projection onto the span of `rank` Gaussian random vectors in F^m.
Projection random_projection(std::size_t m, std::size_t rank, Field field, std::mt19937_64& rng);

} // namespace fusionpack
