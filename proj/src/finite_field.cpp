#include "fusionpack/finite_field.hpp"

#include "fusionpack/error.hpp"

#include <array>
#include <limits>
#include <string>

namespace fusionpack {

namespace {

constexpr std::uint64_t kMaxPrimePower = std::uint64_t{1} << 31;
constexpr std::uint32_t kMaxTableOrder = std::uint32_t{1} << 20;

using Poly = std::vector<std::uint32_t>; // coefficients, lowest degree first

std::vector<std::uint32_t> digits(std::uint64_t index, std::uint32_t p, std::uint32_t n)
{
    std::vector<std::uint32_t> d(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        d[i] = static_cast<std::uint32_t>(index % p);
        index /= p;
    }
    return d;
}

std::uint32_t undigits(const std::vector<std::uint32_t>& d, std::uint32_t p)
{
    std::uint64_t index = 0;
    for (std::size_t i = d.size(); i-- > 0;) {
        index = index * p + d[i];
    }
    return static_cast<std::uint32_t>(index);
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p)
{
    // p is prime: a^(p-2)
    std::uint64_t result = 1;
    std::uint64_t base = a % p;
    std::uint32_t e = p - 2;
    while (e > 0) {
        if (e & 1U) {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1U;
    }
    return static_cast<std::uint32_t>(result);
}

// Remainder of a monic-or-not polynomial a modulo monic-ish divisor f
// (leading coefficient invertible mod p).
Poly poly_mod(Poly a, const Poly& f, std::uint32_t p)
{
    const std::size_t df = f.size() - 1;
    const std::uint64_t lead_inv = inverse_mod(f.back(), p);
    while (a.size() > df) {
        const std::uint64_t top = a.back();
        if (top != 0) {
            const std::uint64_t factor = top * lead_inv % p;
            const std::size_t shift = a.size() - 1 - df;
            for (std::size_t i = 0; i <= df; ++i) {
                const std::uint64_t sub = factor * f[i] % p;
                a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
            }
        }
        a.pop_back();
    }
    return a;
}

bool poly_is_zero(const Poly& a)
{
    for (std::uint32_t c : a) {
        if (c != 0) {
            return false;
        }
    }
    return true;
}

bool is_irreducible(const Poly& f, std::uint32_t p)
{
    const std::uint32_t n = static_cast<std::uint32_t>(f.size() - 1);
    for (std::uint32_t d = 1; d <= n / 2; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) {
            count *= p;
        }
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Poly g = digits(idx, p, d);
            g.push_back(1);
            if (poly_is_zero(poly_mod(f, g, p))) {
                return false;
            }
        }
    }
    return true;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p)
{
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p);
        }
    }
    Poly r = poly_mod(std::move(prod), f, p);
    r.resize(f.size() - 1, 0);
    return r;
}

} // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

PrimePower PrimePower::make(std::uint32_t p, std::uint32_t n)
{
    if (!is_prime(p)) {
        fail(ErrorKind::Parameter, std::to_string(p) + " is not prime");
    }
    if (n < 1) {
        fail(ErrorKind::Parameter, "prime power exponent must be >= 1");
    }
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        q *= p;
        if (q > kMaxPrimePower) {
            fail(ErrorKind::Parameter, "prime power exceeds 2^31");
        }
    }
    return PrimePower{p, n, static_cast<std::uint32_t>(q)};
}

PrimePower PrimePower::from_order(std::uint64_t q)
{
    if (q < 2 || q > kMaxPrimePower) {
        fail(ErrorKind::Parameter, std::to_string(q) + " is not a supported prime power");
    }
    std::uint64_t p = 2;
    while (q % p != 0) {
        ++p;
    }
    std::uint64_t rest = q;
    std::uint32_t n = 0;
    while (rest % p == 0) {
        rest /= p;
        ++n;
    }
    if (rest != 1) {
        fail(ErrorKind::Parameter, std::to_string(q) + " is not a prime power");
    }
    return make(static_cast<std::uint32_t>(p), n);
}

bool PrimePower::is_prime_power(std::uint64_t q)
{
    if (q < 2 || q > kMaxPrimePower) {
        return false;
    }
    std::uint64_t p = 2;
    while (q % p != 0) {
        ++p;
    }
    while (q % p == 0) {
        q /= p;
    }
    return q == 1;
}

FiniteField::FiniteField(PrimePower pp) : pp_(pp)
{
    if (!is_prime(pp.p) || pp.n < 1) {
        fail(ErrorKind::Parameter, "invalid prime power");
    }
    if (pp.q > kMaxTableOrder) {
        fail(ErrorKind::Parameter, "field order " + std::to_string(pp.q) + " exceeds the 2^20 table limit");
    }
    const std::uint32_t p = pp.p;
    const std::uint32_t n = pp.n;
    const std::uint32_t q = pp.q;

    for (std::uint32_t low = 0; low < q && modulus_.empty(); ++low) {
        Poly f = digits(low, p, n);
        f.push_back(1);
        if (is_irreducible(f, p)) {
            modulus_ = std::move(f);
        }
    }
    if (modulus_.empty()) {
        fail(ErrorKind::Internal, "no irreducible polynomial found");
    }

    log_.assign(q, 0);
    if (q == 2) {
        exp_ = {1};
    }
    for (std::uint32_t g = 2; g < q && exp_.empty(); ++g) {
        const Poly gp = digits(g, p, n);
        std::vector<std::uint32_t> seq{1};
        Poly cur = digits(1, p, n);
        for (;;) {
            cur = poly_mulmod(cur, gp, modulus_, p);
            const std::uint32_t idx = undigits(cur, p);
            if (idx == 1) {
                break;
            }
            seq.push_back(idx);
        }
        if (seq.size() == q - 1) {
            exp_ = std::move(seq);
        }
    }
    if (exp_.size() != q - 1) {
        fail(ErrorKind::Internal, "no primitive element found");
    }
    for (std::uint32_t k = 0; k < q - 1; ++k) {
        log_[exp_[k]] = k;
    }

    trace_.assign(q, 0);
    for (std::uint32_t x = 0; x < q; ++x) {
        FieldElement sum = zero();
        FieldElement term{x};
        for (std::uint32_t i = 0; i < n; ++i) {
            sum = add(sum, term);
            term = pow(term, p);
        }
        if (sum.index >= p) {
            fail(ErrorKind::Internal, "field trace left the prime subfield");
        }
        trace_[x] = sum.index;
    }
}

FieldElement FiniteField::element(std::uint32_t index) const
{
    if (index >= pp_.q) {
        fail(ErrorKind::Parameter, "field element index out of range");
    }
    return {index};
}

std::vector<std::uint32_t> FiniteField::coefficients(FieldElement x) const
{
    return digits(x.index, pp_.p, pp_.n);
}

FieldElement FiniteField::from_coefficients(const std::vector<std::uint32_t>& coeffs) const
{
    if (coeffs.size() != pp_.n) {
        fail(ErrorKind::Parameter, "coefficient vector has the wrong length");
    }
    for (std::uint32_t c : coeffs) {
        if (c >= pp_.p) {
            fail(ErrorKind::Parameter, "coefficient out of range");
        }
    }
    return {undigits(coeffs, pp_.p)};
}

FieldElement FiniteField::add(FieldElement a, FieldElement b) const
{
    const std::uint32_t p = pp_.p;
    std::uint32_t x = a.index;
    std::uint32_t y = b.index;
    std::uint32_t result = 0;
    std::uint32_t place = 1;
    for (std::uint32_t i = 0; i < pp_.n; ++i) {
        result += ((x % p + y % p) % p) * place;
        x /= p;
        y /= p;
        place *= p;
    }
    return {result};
}

FieldElement FiniteField::neg(FieldElement a) const
{
    const std::uint32_t p = pp_.p;
    std::uint32_t x = a.index;
    std::uint32_t result = 0;
    std::uint32_t place = 1;
    for (std::uint32_t i = 0; i < pp_.n; ++i) {
        result += ((p - x % p) % p) * place;
        x /= p;
        place *= p;
    }
    return {result};
}

FieldElement FiniteField::mul(FieldElement a, FieldElement b) const
{
    if (a.index == 0 || b.index == 0) {
        return zero();
    }
    const std::uint32_t order = pp_.q - 1;
    return {exp_[(std::uint64_t{log_[a.index]} + log_[b.index]) % order]};
}

FieldElement FiniteField::inv(FieldElement a) const
{
    if (a.index == 0) {
        fail(ErrorKind::Parameter, "zero has no multiplicative inverse");
    }
    const std::uint32_t order = pp_.q - 1;
    return {exp_[(order - log_[a.index]) % order]};
}

FieldElement FiniteField::pow(FieldElement a, std::uint64_t e) const
{
    if (e == 0) {
        return one();
    }
    if (a.index == 0) {
        return zero();
    }
    const std::uint64_t order = pp_.q - 1;
    return {exp_[(log_[a.index] * (e % order)) % order]};
}

std::vector<PointSet> enumerate_affine_hyperplanes(std::uint32_t p, std::uint32_t t1)
{
    if (!is_prime(p)) {
        fail(ErrorKind::Parameter, std::to_string(p) + " is not prime");
    }
    if (t1 < 2) {
        fail(ErrorKind::Parameter, "affine geometry dimension must be >= 2");
    }
    std::uint64_t points = 1;
    for (std::uint32_t i = 0; i < t1; ++i) {
        points *= p;
        if (points > (std::uint64_t{1} << 16)) {
            fail(ErrorKind::Parameter, "affine geometry exceeds 2^16 points");
        }
    }

    std::vector<std::vector<std::uint32_t>> coords(points);
    for (std::uint64_t x = 0; x < points; ++x) {
        coords[x] = digits(x, p, t1);
    }

    std::vector<PointSet> blocks;
    for (std::uint64_t a = 1; a < points; ++a) {
        const auto& normal = coords[a];
        std::size_t first = 0;
        while (normal[first] == 0) {
            ++first;
        }
        if (normal[first] != 1) {
            continue;
        }
        std::vector<PointSet> cosets(p);
        for (std::uint64_t x = 0; x < points; ++x) {
            std::uint64_t s = 0;
            for (std::uint32_t i = 0; i < t1; ++i) {
                s += std::uint64_t{normal[i]} * coords[x][i];
            }
            cosets[s % p].push_back(static_cast<std::size_t>(x));
        }
        for (auto& c : cosets) {
            blocks.push_back(std::move(c));
        }
    }
    return blocks;
}

std::vector<PointSet> enumerate_projective_plane(PrimePower q)
{
    if (!is_prime(q.p) || q.n < 1) {
        fail(ErrorKind::Parameter, "projective plane order must be a prime power");
    }
    const std::uint64_t count = std::uint64_t{q.q} * q.q + q.q + 1;
    if (count > (std::uint64_t{1} << 16)) {
        fail(ErrorKind::Parameter, "projective plane exceeds 2^16 points");
    }
    const FiniteField field(q);

    using Triple = std::array<FieldElement, 3>;
    std::vector<Triple> normalized;
    normalized.reserve(count);
    for (std::uint32_t a = 0; a < q.q; ++a) {
        for (std::uint32_t b = 0; b < q.q; ++b) {
            for (std::uint32_t c = 0; c < q.q; ++c) {
                const Triple t{FieldElement{a}, FieldElement{b}, FieldElement{c}};
                const FieldElement lead = a != 0 ? t[0] : (b != 0 ? t[1] : t[2]);
                if (lead == field.one()) {
                    normalized.push_back(t);
                }
            }
        }
    }
    if (normalized.size() != count) {
        fail(ErrorKind::Internal, "projective point count mismatch");
    }

    std::vector<PointSet> lines;
    lines.reserve(count);
    for (const Triple& normal : normalized) {
        PointSet line;
        for (std::size_t idx = 0; idx < normalized.size(); ++idx) {
            const Triple& x = normalized[idx];
            FieldElement s = field.zero();
            for (std::size_t i = 0; i < 3; ++i) {
                s = field.add(s, field.mul(normal[i], x[i]));
            }
            if (s == field.zero()) {
                line.push_back(idx);
            }
        }
        lines.push_back(std::move(line));
    }
    return lines;
}

} // namespace fusionpack
