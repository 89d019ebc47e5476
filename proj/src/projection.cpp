#include "fusionpack/projection.hpp"

#include "fusionpack/error.hpp"

#include <algorithm>

namespace fusionpack {

Projection Projection::from_matrix(Matrix matrix, const Tolerance& tol, Provenance provenance)
{
    const ProjectionCheck check = is_projection(matrix, tol);
    if (!check.ok) {
        fail(ErrorKind::Parameter, "not an orthogonal projection: " + check.diagnostic);
    }
    return Projection(std::move(matrix), check.rank, std::move(provenance));
}

Projection Projection::trusted(Matrix matrix, std::size_t rank, Provenance provenance)
{
    return Projection(std::move(matrix), rank, std::move(provenance));
}

Projection Projection::complement() const
{
    Matrix c = Matrix::identity(dimension()) - matrix_;
    Provenance p = provenance_;
    p.complemented = !p.complemented;
    return Projection(std::move(c), dimension() - rank_, std::move(p));
}

Projection coordinate_projection(const Basis& basis, const Block& block, Provenance provenance)
{
    const std::size_t m = basis.dimension();
    if (block.empty()) {
        fail(ErrorKind::Parameter, "coordinate projection needs a nonempty block");
    }
    Block sorted = block;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        fail(ErrorKind::Parameter, "coordinate projection block repeats an index");
    }
    if (sorted.back() >= m) {
        fail(ErrorKind::Parameter, "coordinate projection index " + std::to_string(sorted.back()) +
                                       " outside the basis of size " + std::to_string(m));
    }
    const Matrix& b = basis.vectors();
    Matrix p(m, m);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = r; c < m; ++c) {
            Complex s = 0.0;
            for (std::size_t j : sorted) {
                s += b(r, j) * std::conj(b(c, j));
            }
            p(r, c) = s;
            p(c, r) = std::conj(s);
        }
        p(r, r) = p(r, r).real();
    }
    if (!provenance.block) {
        provenance.block = sorted;
    }
    return Projection::trusted(std::move(p), sorted.size(), std::move(provenance));
}

Projection random_projection(std::size_t m, std::size_t rank, Field field, std::mt19937_64& rng)
{
    if (rank > m) {
        fail(ErrorKind::Parameter, "rank exceeds dimension");
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vector> cols(rank, Vector(m));
    for (auto& v : cols) {
        for (auto& z : v) {
            const double re = gauss(rng);
            const double im = field == Field::Complex ? gauss(rng) : 0.0;
            z = Complex(re, im);
        }
    }
    const auto ortho = gram_schmidt(cols, Tolerance{});
    Matrix p(m, m);
    for (const Vector& u : ortho) {
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < m; ++c) {
                p(r, c) += u[r] * std::conj(u[c]);
            }
        }
    }
    for (std::size_t r = 0; r < m; ++r) {
        p(r, r) = p(r, r).real();
        for (std::size_t c = r + 1; c < m; ++c) {
            p(c, r) = std::conj(p(r, c));
        }
    }
    return Projection::trusted(std::move(p), rank, Provenance::imported());
}

} // namespace fusionpack
