#pragma once

#include "fusionpack/finite_field.hpp"
#include "fusionpack/numerics.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace fusionpack {

/// Orthonormal basis of F^m; the columns of `vectors` are the basis vectors.
class Basis {
public:
    /// Dimension error unless `vectors` is square; parameter error if a
    /// Real-tagged basis has nonzero imaginary parts. Orthonormality is checked
    /// by verify_mubs, not here.
    Basis(Field field, Matrix vectors);

    std::size_t dimension() const noexcept { return vectors_.rows(); }
    Field field() const noexcept { return field_; }
    const Matrix& vectors() const noexcept { return vectors_; }
    Vector vector(std::size_t j) const { return vectors_.column(j); }

private:
    Field field_;
    Matrix vectors_;
};

struct MubFamily {
    std::size_t m = 0;
    Field field = Field::Complex;
    std::vector<Basis> bases;

    std::size_t size() const noexcept { return bases.size(); }
};

/// Largest possible number of MUBs in F^m: m/2 + 1 (real), m + 1 (complex).
std::size_t mub_cardinality_bound(std::size_t m, Field field);

struct MubReport {
    bool passed = false;
    bool orthonormal = false;
    bool unbiased = false;
    bool within_cardinality_bound = false;
    std::size_t bases = 0;
    std::size_t bound = 0;
    double worst_orthonormality_deviation = 0.0; // max |B*B - I|
    double worst_unbiasedness_deviation = 0.0;   // max ||<b, b'>|^2 - 1/m|
    std::vector<std::string> failures;

    double worst_deviation() const
    {
        return worst_orthonormality_deviation > worst_unbiasedness_deviation ? worst_orthonormality_deviation
                                                                             : worst_unbiasedness_deviation;
    }
};

MubReport verify_mubs(const MubFamily& family, const Tolerance& tol);

/// p + 1 MUBs in C^p for an odd prime p <= 101: the standard basis, then for
/// each a in GF(p) the basis with entries p^{-1/2} w^{a j^2 + b j}, w = e^{2 pi i/p}.
MubFamily gen_mubs_prime(std::uint32_t p);

/// q + 1 MUBs in C^q, q = p^n with p odd, n >= 2, q <= 81: the standard basis,
/// then entries q^{-1/2} w_p^{tr(a x^2 + b x)} over GF(q).
MubFamily gen_mubs_prime_power(PrimePower q);

/// Hardcoded maximal families: 3 in C^2, 5 in C^4, 3 in R^4. Each family is
/// verified on load.
MubFamily gen_mubs_small(std::size_t m, Field field);

/// Dispatches to the generator that covers (m, field); unsupported error with
/// an import hint otherwise.
MubFamily gen_mubs(std::size_t m, Field field);

} // namespace fusionpack
