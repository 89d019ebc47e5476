#include "fusionpack/mubs.hpp"

#include "fusionpack/error.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fusionpack {

namespace {

// w^k for k in [0, p), with the exponent reduced before evaluation.
std::vector<Complex> roots_of_unity(std::uint32_t p)
{
    std::vector<Complex> w(p);
    for (std::uint32_t k = 0; k < p; ++k) {
        w[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p));
    }
    return w;
}

MubFamily verified(MubFamily family)
{
    const MubReport rep = verify_mubs(family, Tolerance{});
    if (!rep.passed) {
        fail(ErrorKind::Internal, "hardcoded MUB family failed verification");
    }
    return family;
}

Basis basis_from_rows(Field field, std::size_t m, std::initializer_list<Complex> row_major, double scale)
{
    std::vector<Complex> e(row_major);
    for (Complex& z : e) {
        z *= scale;
    }
    return Basis(field, Matrix(m, m, std::move(e)));
}

// Phase exponents (powers of i) of the two-qubit stabilizer bases;
// row = coordinate x, column = basis vector b.
constexpr std::array<std::array<std::array<int, 4>, 4>, 4> kC4Phases{{
    {{{0, 0, 0, 0}, {0, 2, 0, 2}, {0, 0, 2, 2}, {0, 2, 2, 0}}},
    {{{0, 0, 0, 0}, {1, 3, 1, 3}, {0, 0, 2, 2}, {3, 1, 1, 3}}},
    {{{0, 0, 0, 0}, {1, 3, 1, 3}, {1, 1, 3, 3}, {2, 0, 0, 2}}},
    {{{0, 0, 0, 0}, {0, 2, 0, 2}, {1, 1, 3, 3}, {3, 1, 1, 3}}},
}};

} // namespace

Basis::Basis(Field field, Matrix vectors) : field_(field), vectors_(std::move(vectors))
{
    if (!vectors_.is_square() || vectors_.rows() == 0) {
        fail(ErrorKind::Dimension, "basis matrix must be square and nonempty");
    }
    if (field_ == Field::Real && !vectors_.is_real()) {
        fail(ErrorKind::Parameter, "real-tagged basis has nonzero imaginary parts");
    }
}

std::size_t mub_cardinality_bound(std::size_t m, Field field)
{
    return field == Field::Real ? m / 2 + 1 : m + 1;
}

MubReport verify_mubs(const MubFamily& family, const Tolerance& tol)
{
    MubReport rep;
    const std::size_t m = family.m;
    rep.bases = family.size();
    rep.bound = mub_cardinality_bound(m, family.field);
    rep.within_cardinality_bound = rep.bases <= rep.bound;
    if (!rep.within_cardinality_bound) {
        std::ostringstream os;
        os << rep.bases << " bases exceed the " << (family.field == Field::Real ? "real" : "complex")
           << " bound of " << rep.bound;
        rep.failures.push_back(os.str());
    }

    bool shapes_ok = true;
    for (std::size_t k = 0; k < family.size(); ++k) {
        const Basis& b = family.bases[k];
        if (b.dimension() != m) {
            rep.failures.push_back("basis " + std::to_string(k) + " has the wrong dimension");
            shapes_ok = false;
        }
        if (family.field == Field::Real && !b.vectors().is_real()) {
            rep.failures.push_back("basis " + std::to_string(k) + " is not real");
        }
    }
    if (!shapes_ok) {
        return rep;
    }

    std::vector<Matrix> adjoints;
    adjoints.reserve(family.size());
    for (const Basis& b : family.bases) {
        adjoints.push_back(b.vectors().adjoint());
    }

    const Matrix id = Matrix::identity(m);
    for (std::size_t k = 0; k < family.size(); ++k) {
        const double dev = (adjoints[k] * family.bases[k].vectors() - id).max_abs();
        rep.worst_orthonormality_deviation = std::max(rep.worst_orthonormality_deviation, dev);
        if (dev > tol.eps_abs) {
            rep.failures.push_back("basis " + std::to_string(k) + " is not orthonormal");
        }
    }

    const double target = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < family.size(); ++k) {
        for (std::size_t k2 = k + 1; k2 < family.size(); ++k2) {
            const Matrix g = adjoints[k] * family.bases[k2].vectors();
            double dev = 0.0;
            for (const Complex& z : g.entries()) {
                dev = std::max(dev, std::abs(std::norm(z) - target));
            }
            rep.worst_unbiasedness_deviation = std::max(rep.worst_unbiasedness_deviation, dev);
            if (dev > tol.eps_abs) {
                rep.failures.push_back("bases " + std::to_string(k) + " and " + std::to_string(k2) +
                                       " are not unbiased");
            }
        }
    }
    rep.orthonormal = rep.worst_orthonormality_deviation <= tol.eps_abs;
    rep.unbiased = rep.worst_unbiasedness_deviation <= tol.eps_abs;
    rep.passed = rep.failures.empty();
    return rep;
}

MubFamily gen_mubs_prime(std::uint32_t p)
{
    if (p == 2 || !is_prime(p)) {
        fail(ErrorKind::Parameter, std::to_string(p) + " is not an odd prime (use gen_mubs_small for m = 2)");
    }
    if (p > 101) {
        fail(ErrorKind::Parameter, "gen_mubs_prime supports p <= 101");
    }
    const auto w = roots_of_unity(p);
    const double scale = 1.0 / std::sqrt(static_cast<double>(p));

    MubFamily family{p, Field::Complex, {}};
    family.bases.reserve(p + 1);
    family.bases.emplace_back(Field::Complex, Matrix::identity(p));
    for (std::uint64_t a = 0; a < p; ++a) {
        Matrix b(p, p);
        for (std::uint64_t col = 0; col < p; ++col) {
            for (std::uint64_t j = 0; j < p; ++j) {
                const std::uint64_t e = (a * j % p * j + col * j) % p;
                b(j, col) = scale * w[e];
            }
        }
        family.bases.emplace_back(Field::Complex, std::move(b));
    }
    return family;
}

MubFamily gen_mubs_prime_power(PrimePower q)
{
    if (!is_prime(q.p)) {
        fail(ErrorKind::Parameter, "invalid prime power");
    }
    if (q.p == 2) {
        fail(ErrorKind::Unsupported, "MUB generation in even characteristic (q = " + std::to_string(q.q) +
                                         ") is not supported; import the family instead");
    }
    if (q.n < 2) {
        fail(ErrorKind::Parameter, "gen_mubs_prime_power expects n >= 2; use gen_mubs_prime for primes");
    }
    if (q.q > 81) {
        fail(ErrorKind::Parameter, "gen_mubs_prime_power supports q <= 81");
    }
    const FiniteField field(q);
    const auto w = roots_of_unity(q.p);
    const std::uint32_t m = q.q;
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));

    std::vector<FieldElement> squares(m);
    for (std::uint32_t x = 0; x < m; ++x) {
        squares[x] = field.mul(FieldElement{x}, FieldElement{x});
    }

    MubFamily family{m, Field::Complex, {}};
    family.bases.reserve(m + 1);
    family.bases.emplace_back(Field::Complex, Matrix::identity(m));
    for (std::uint32_t a = 0; a < m; ++a) {
        Matrix b(m, m);
        for (std::uint32_t col = 0; col < m; ++col) {
            for (std::uint32_t x = 0; x < m; ++x) {
                const FieldElement arg =
                    field.add(field.mul(FieldElement{a}, squares[x]), field.mul(FieldElement{col}, FieldElement{x}));
                b(x, col) = scale * w[field.trace(arg)];
            }
        }
        family.bases.emplace_back(Field::Complex, std::move(b));
    }
    return family;
}

MubFamily gen_mubs_small(std::size_t m, Field field)
{
    const Complex i(0.0, 1.0);
    if (m == 2 && field == Field::Complex) {
        const double s = 1.0 / std::sqrt(2.0);
        MubFamily f{2, Field::Complex, {}};
        f.bases.emplace_back(Field::Complex, Matrix::identity(2));
        f.bases.push_back(basis_from_rows(Field::Complex, 2, {1.0, 1.0, 1.0, -1.0}, s));
        f.bases.push_back(basis_from_rows(Field::Complex, 2, {1.0, 1.0, i, -i}, s));
        return verified(std::move(f));
    }
    if (m == 4 && field == Field::Complex) {
        const std::array<Complex, 4> powers{1.0, i, -1.0, -i};
        MubFamily f{4, Field::Complex, {}};
        f.bases.emplace_back(Field::Complex, Matrix::identity(4));
        for (const auto& table : kC4Phases) {
            Matrix b(4, 4);
            for (std::size_t x = 0; x < 4; ++x) {
                for (std::size_t col = 0; col < 4; ++col) {
                    b(x, col) = 0.5 * powers[static_cast<std::size_t>(table[x][col])];
                }
            }
            f.bases.emplace_back(Field::Complex, std::move(b));
        }
        return verified(std::move(f));
    }
    if (m == 4 && field == Field::Real) {
        MubFamily f{4, Field::Real, {}};
        f.bases.emplace_back(Field::Real, Matrix::identity(4));
        f.bases.push_back(basis_from_rows(Field::Real, 4,
                                          {1, 1, 1, 1,   //
                                           1, -1, 1, -1, //
                                           1, 1, -1, -1, //
                                           1, -1, -1, 1},
                                          0.5));
        f.bases.push_back(basis_from_rows(Field::Real, 4,
                                          {1, 1, 1, -1,  //
                                           1, 1, -1, 1,  //
                                           1, -1, 1, 1,  //
                                           -1, 1, 1, 1},
                                          0.5));
        return verified(std::move(f));
    }
    fail(ErrorKind::Unsupported, "no built-in MUB family for " + std::string(field_symbol(field)) + "^" +
                                     std::to_string(m) + "; import required");
}

MubFamily gen_mubs(std::size_t m, Field field)
{
    if ((m == 2 && field == Field::Complex) || m == 4) {
        return gen_mubs_small(m, field);
    }
    if (field == Field::Complex && PrimePower::is_prime_power(m)) {
        const PrimePower pp = PrimePower::from_order(m);
        if (pp.p != 2) {
            return pp.n == 1 ? gen_mubs_prime(pp.p) : gen_mubs_prime_power(pp);
        }
    }
    fail(ErrorKind::Unsupported, "no built-in MUB family for " + std::string(field_symbol(field)) + "^" +
                                     std::to_string(m) + "; import required");
}

} // namespace fusionpack
