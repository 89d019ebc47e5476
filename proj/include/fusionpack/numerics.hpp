#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fusionpack {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

enum class Field { Real, Complex };

const char* field_symbol(Field field); // "R" or "C"
Field parse_field(const std::string& symbol);

/// Approximate-comparison policy shared by every module.
///
/// `eps_abs` covers generic numerical checks; `eps_tight` is reserved for
/// identities that hold exactly by construction (antipodality of spatial
/// complements, round trips).
struct Tolerance {
    double eps_abs = 1e-9;
    double eps_tight = 1e-12;

    /// Throws a parameter error unless 0 < eps_tight <= eps_abs < 1.
    void validate() const;
};

/// Dense row-major complex matrix. Real-field data is stored with zero
/// imaginary parts.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static Matrix identity(std::size_t n);
    static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    /// Columns are the given vectors, which must share one length.
    static Matrix from_columns(std::span<const Vector> columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> entries() const noexcept { return data_; }

    Vector column(std::size_t c) const;

    Matrix adjoint() const;
    Complex trace() const;
    double max_abs() const;
    /// True iff every imaginary part is exactly zero.
    bool is_real() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(Complex scale);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
    friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Hilbert-Schmidt inner product trace(A B*).
Complex hs_inner(const Matrix& a, const Matrix& b);

/// trace(P Q) for Hermitian P, Q, computed from entries in O(m^2).
double hermitian_trace_product(const Matrix& p, const Matrix& q);

struct ProjectionCheck {
    bool ok = false;
    std::size_t rank = 0;
    std::string diagnostic; // empty when ok
};

ProjectionCheck is_projection(const Matrix& p, const Tolerance& tol);

Complex dot(std::span<const Complex> a, std::span<const Complex> b); // sum conj(a_i) b_i
double norm(std::span<const Complex> v);

/// Orthonormalizes the vectors in order (modified Gram-Schmidt with one
/// re-orthogonalization pass). Throws a rank-deficiency error when a residual
/// norm falls below eps_abs.
std::vector<Vector> gram_schmidt(std::span<const Vector> vectors, const Tolerance& tol);

/// Numerical rank by Gaussian elimination with complete pivoting; pivots below
/// eps_abs * (largest column norm) count as zero.
std::size_t matrix_rank(const Matrix& a, const Tolerance& tol);

} // namespace fusionpack
