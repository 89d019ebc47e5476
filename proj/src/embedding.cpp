#include "fusionpack/embedding.hpp"

#include "fusionpack/error.hpp"

#include <cmath>

namespace fusionpack {

std::size_t embedding_dimension(std::size_t m, Field field)
{
    return field == Field::Real ? m * (m + 1) / 2 - 1 : m * m - 1;
}

double squared_radius(std::size_t m, std::size_t l)
{
    return static_cast<double>(l * (m - l)) / static_cast<double>(m);
}

EmbeddingSpace::EmbeddingSpace(std::size_t m, Field field) : m_(m), field_(field), d_(embedding_dimension(m, field))
{
    elements_.reserve(d_);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = j + 1; k < m; ++k) {
            elements_.push_back({Kind::Symmetric, j, k});
        }
    }
    if (field == Field::Complex) {
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = j + 1; k < m; ++k) {
                elements_.push_back({Kind::Antisymmetric, j, k});
            }
        }
    }
    for (std::size_t level = 1; level < m; ++level) {
        elements_.push_back({Kind::Diagonal, level, 0});
    }
    if (elements_.size() != d_) {
        fail(ErrorKind::Internal, "embedding basis size does not match d");
    }
}

EmbeddingSpace build_space(std::size_t m, Field field)
{
    if (m < 2) {
        fail(ErrorKind::Parameter, "embedding space needs m >= 2");
    }
    return EmbeddingSpace(m, field);
}

Matrix EmbeddingSpace::basis_matrix(std::size_t i) const
{
    const Element& e = elements_.at(i);
    const double s = 1.0 / std::sqrt(2.0);
    Matrix b(m_, m_);
    switch (e.kind) {
    case Kind::Symmetric:
        b(e.j, e.k) = s;
        b(e.k, e.j) = s;
        break;
    case Kind::Antisymmetric:
        b(e.j, e.k) = Complex(0.0, -s);
        b(e.k, e.j) = Complex(0.0, s);
        break;
    case Kind::Diagonal: {
        const double level = static_cast<double>(e.j);
        const double n = 1.0 / std::sqrt(level * (level + 1.0));
        for (std::size_t r = 0; r < e.j; ++r) {
            b(r, r) = n;
        }
        b(e.j, e.j) = -level * n;
        break;
    }
    }
    return b;
}

std::vector<double> EmbeddingSpace::coordinates(const Matrix& a) const
{
    if (a.rows() != m_ || a.cols() != m_) {
        fail(ErrorKind::Dimension, "matrix does not match the embedding space");
    }
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<double> coords;
    coords.reserve(d_);
    std::vector<double> diag_prefix(m_ + 1, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
        diag_prefix[r + 1] = diag_prefix[r] + a(r, r).real();
    }
    for (const Element& e : elements_) {
        switch (e.kind) {
        case Kind::Symmetric:
            coords.push_back(s * (a(e.j, e.k) + a(e.k, e.j)).real());
            break;
        case Kind::Antisymmetric:
            coords.push_back(s * (Complex(0.0, 1.0) * (a(e.j, e.k) - a(e.k, e.j))).real());
            break;
        case Kind::Diagonal: {
            const double level = static_cast<double>(e.j);
            coords.push_back((diag_prefix[e.j] - level * a(e.j, e.j).real()) / std::sqrt(level * (level + 1.0)));
            break;
        }
        }
    }
    return coords;
}

Matrix EmbeddingSpace::synthesize(const std::vector<double>& coords) const
{
    if (coords.size() != d_) {
        fail(ErrorKind::Dimension, "coordinate vector does not match the embedding dimension");
    }
    const double s = 1.0 / std::sqrt(2.0);
    Matrix a(m_, m_);
    for (std::size_t i = 0; i < d_; ++i) {
        const Element& e = elements_[i];
        const double c = coords[i];
        switch (e.kind) {
        case Kind::Symmetric:
            a(e.j, e.k) += s * c;
            a(e.k, e.j) += s * c;
            break;
        case Kind::Antisymmetric:
            a(e.j, e.k) += Complex(0.0, -s * c);
            a(e.k, e.j) += Complex(0.0, s * c);
            break;
        case Kind::Diagonal: {
            const double level = static_cast<double>(e.j);
            const double n = c / std::sqrt(level * (level + 1.0));
            for (std::size_t r = 0; r < e.j; ++r) {
                a(r, r) += n;
            }
            a(e.j, e.j) -= level * n;
            break;
        }
        }
    }
    return a;
}

namespace {

void require_embeddable(std::size_t m, std::size_t rank)
{
    if (rank == 0 || rank >= m) {
        fail(ErrorKind::Degenerate, "rank " + std::to_string(rank) + " projection in dimension " + std::to_string(m) +
                                        " has no embedded vector (radius 0)");
    }
}

} // namespace

EmbeddedVector embed(const Projection& p, const EmbeddingSpace& space, std::size_t source_index)
{
    const std::size_t m = space.m();
    if (p.dimension() != m) {
        fail(ErrorKind::Dimension, "projection dimension does not match the embedding space");
    }
    const std::size_t l = p.rank();
    require_embeddable(m, l);
    Matrix traceless = p.matrix();
    const double shift = static_cast<double>(l) / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        traceless(i, i) -= shift;
    }
    EmbeddedVector v;
    v.coords = space.coordinates(traceless);
    const double r = std::sqrt(squared_radius(m, l));
    for (double& c : v.coords) {
        c /= r;
    }
    v.source_rank = l;
    v.source_index = source_index;
    return v;
}

Matrix reconstruct(const EmbeddedVector& v, const EmbeddingSpace& space)
{
    const std::size_t m = space.m();
    require_embeddable(m, v.source_rank);
    Matrix a = space.synthesize(v.coords);
    a *= std::sqrt(squared_radius(m, v.source_rank));
    const double shift = static_cast<double>(v.source_rank) / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        a(i, i) += shift;
    }
    return a;
}

double embedded_inner_from_trace(double trace_pq, std::size_t m, std::size_t lp, std::size_t lq)
{
    const double md = static_cast<double>(m);
    const double a = static_cast<double>(lp);
    const double b = static_cast<double>(lq);
    const double scale = md / std::sqrt(a * b * (md - a) * (md - b));
    return scale * (trace_pq - a * b / md);
}

double embedded_inner(const Projection& p, const Projection& q, const EmbeddingSpace& space)
{
    const std::size_t m = space.m();
    if (p.dimension() != m || q.dimension() != m) {
        fail(ErrorKind::Dimension, "projection dimension does not match the embedding space");
    }
    require_embeddable(m, p.rank());
    require_embeddable(m, q.rank());
    return embedded_inner_from_trace(hermitian_trace_product(p.matrix(), q.matrix()), m, p.rank(), q.rank());
}

bool check_image_disjointness(const Projection& p, const Projection& q, const EmbeddingSpace& space,
                              const Tolerance& tol)
{
    if (p.rank() == q.rank()) {
        fail(ErrorKind::Parameter, "image disjointness compares projections of different ranks");
    }
    const EmbeddedVector vp = embed(p, space);
    const EmbeddedVector vq = embed(q, space);
    double sq = 0.0;
    for (std::size_t i = 0; i < vp.coords.size(); ++i) {
        const double diff = vp.coords[i] - vq.coords[i];
        sq += diff * diff;
    }
    return std::sqrt(sq) > tol.eps_abs;
}

double euclidean_dot(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.size() != b.size()) {
        fail(ErrorKind::Dimension, "dot product of vectors with different lengths");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

} // namespace fusionpack
