#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fusionpack {

bool is_prime(std::uint64_t n);

/// q = p^n with p prime. Construct through make() or from_order().
struct PrimePower {
    std::uint32_t p = 0;
    std::uint32_t n = 0;
    std::uint32_t q = 0;

    /// Parameter error unless p is prime, n >= 1 and p^n <= 2^31.
    static PrimePower make(std::uint32_t p, std::uint32_t n);
    /// Factors q; parameter error if q is not a prime power.
    static PrimePower from_order(std::uint64_t q);
    /// True iff q is a prime power (q >= 2).
    static bool is_prime_power(std::uint64_t q);
};

/// Element of GF(p^n), identified by the base-p integer of its polynomial
/// coefficients: index = sum_i c_i p^i.
struct FieldElement {
    std::uint32_t index = 0;

    friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

/// Table-based GF(p^n) built modulo the smallest monic irreducible of degree n
/// (polynomials ordered by their coefficient index).
class FiniteField {
public:
    /// Parameter error if q > 2^20.
    explicit FiniteField(PrimePower pp);

    const PrimePower& order() const noexcept { return pp_; }
    std::uint32_t size() const noexcept { return pp_.q; }
    std::uint32_t characteristic() const noexcept { return pp_.p; }

    /// Modulus coefficients c_0..c_n (c_n = 1).
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    FieldElement zero() const noexcept { return {0}; }
    FieldElement one() const noexcept { return {1}; }
    FieldElement element(std::uint32_t index) const;
    /// Embeds an element of the prime subfield.
    FieldElement from_prime(std::uint32_t a) const { return element(a % pp_.p); }

    std::vector<std::uint32_t> coefficients(FieldElement x) const;
    FieldElement from_coefficients(const std::vector<std::uint32_t>& coeffs) const;

    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement neg(FieldElement a) const;
    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
    FieldElement mul(FieldElement a, FieldElement b) const;
    /// Parameter error for zero.
    FieldElement inv(FieldElement a) const;
    FieldElement pow(FieldElement a, std::uint64_t e) const;

    FieldElement primitive_element() const noexcept { return {exp_[1]}; }

    /// Absolute trace tr(x) = sum_{i<n} x^{p^i}, as a value in [0, p).
    std::uint32_t trace(FieldElement x) const { return trace_[x.index]; }

private:
    PrimePower pp_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> exp_; // exp_[k] = g^k, k in [0, q-1)
    std::vector<std::uint32_t> log_; // log_[x] for x != 0
    std::vector<std::uint32_t> trace_;
};

using PointSet = std::vector<std::size_t>;

/// All cosets of (t1-1)-dimensional subspaces of GF(p)^t1. Points are vectors
/// x with index sum_i x_i p^i. Each hyperplane is {x : a.x = c} for a normal
/// vector a whose first nonzero coordinate is 1, listed by a then c.
std::vector<PointSet> enumerate_affine_hyperplanes(std::uint32_t p, std::uint32_t t1);

/// Lines of PG(2, q) as point sets over the q^2+q+1 points. Points and lines
/// are both indexed by normalized homogeneous triples (first nonzero = 1) in
/// lexicographic order of their field-element indices.
std::vector<PointSet> enumerate_projective_plane(PrimePower q);

} // namespace fusionpack
