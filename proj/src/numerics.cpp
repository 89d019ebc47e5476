#include "fusionpack/numerics.hpp"

#include "fusionpack/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fusionpack {

const char* field_symbol(Field field) { return field == Field::Real ? "R" : "C"; }

Field parse_field(const std::string& symbol)
{
    if (symbol == "R" || symbol == "r") {
        return Field::Real;
    }
    if (symbol == "C" || symbol == "c") {
        return Field::Complex;
    }
    fail(ErrorKind::Parameter, "field must be \"R\" or \"C\", got \"" + symbol + "\"");
}

void Tolerance::validate() const
{
    if (!(eps_tight > 0.0 && eps_tight <= eps_abs && eps_abs < 1.0)) {
        std::ostringstream os;
        os << "tolerance requires 0 < eps_tight <= eps_abs < 1 (eps_tight=" << eps_tight
           << ", eps_abs=" << eps_abs << ")";
        fail(ErrorKind::Parameter, os.str());
    }
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries))
{
    if (data_.size() != rows * cols) {
        fail(ErrorKind::Dimension, "matrix entry count does not match rows x cols");
    }
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::from_columns(std::span<const Vector> columns)
{
    if (columns.empty()) {
        return {};
    }
    const std::size_t rows = columns.front().size();
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) {
            fail(ErrorKind::Dimension, "columns have different lengths");
        }
        for (std::size_t r = 0; r < rows; ++r) {
            m(r, c) = columns[c][r];
        }
    }
    return m;
}

Vector Matrix::column(std::size_t c) const
{
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        v[r] = (*this)(r, c);
    }
    return v;
}

Matrix Matrix::adjoint() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = std::conj((*this)(r, c));
        }
    }
    return t;
}

Complex Matrix::trace() const
{
    if (!is_square()) {
        fail(ErrorKind::Dimension, "trace of a non-square matrix");
    }
    Complex sum = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        sum += (*this)(i, i);
    }
    return sum;
}

double Matrix::max_abs() const
{
    double worst = 0.0;
    for (const Complex& z : data_) {
        worst = std::max(worst, std::abs(z));
    }
    return worst;
}

bool Matrix::is_real() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Complex& z) { return z.imag() == 0.0; });
}

Matrix& Matrix::operator+=(const Matrix& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        fail(ErrorKind::Dimension, "matrix addition shape mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        fail(ErrorKind::Dimension, "matrix subtraction shape mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

Matrix& Matrix::operator*=(Complex scale)
{
    for (Complex& z : data_) {
        z *= scale;
    }
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols_ != b.rows_) {
        fail(ErrorKind::Dimension, "matrix product shape mismatch");
    }
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0)) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols_; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

Complex hs_inner(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        fail(ErrorKind::Dimension, "hs_inner requires matrices of the same shape");
    }
    // trace(A B*) = sum_ij A_ij conj(B_ij)
    Complex sum = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        sum += ea[i] * std::conj(eb[i]);
    }
    return sum;
}

double hermitian_trace_product(const Matrix& p, const Matrix& q)
{
    // For Hermitian Q, trace(PQ) = trace(P Q*) and the imaginary part vanishes.
    return hs_inner(p, q).real();
}

ProjectionCheck is_projection(const Matrix& p, const Tolerance& tol)
{
    ProjectionCheck check;
    if (!p.is_square()) {
        check.diagnostic = "matrix is not square";
        return check;
    }
    const double hermitian_gap = (p - p.adjoint()).max_abs();
    if (hermitian_gap > tol.eps_abs) {
        check.diagnostic = "not Hermitian: max |P - P*| = " + std::to_string(hermitian_gap);
        return check;
    }
    const double idempotent_gap = (p * p - p).max_abs();
    if (idempotent_gap > tol.eps_abs) {
        check.diagnostic = "not idempotent: max |P^2 - P| = " + std::to_string(idempotent_gap);
        return check;
    }
    const double tr = p.trace().real();
    const double rounded = std::round(tr);
    if (std::abs(tr - rounded) > tol.eps_abs || rounded < 0.0) {
        check.diagnostic = "trace " + std::to_string(tr) + " is not an integer";
        return check;
    }
    check.ok = true;
    check.rank = static_cast<std::size_t>(rounded);
    return check;
}

Complex dot(std::span<const Complex> a, std::span<const Complex> b)
{
    if (a.size() != b.size()) {
        fail(ErrorKind::Dimension, "dot product of vectors with different lengths");
    }
    Complex sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += std::conj(a[i]) * b[i];
    }
    return sum;
}

double norm(std::span<const Complex> v)
{
    double sum = 0.0;
    for (const Complex& z : v) {
        sum += std::norm(z);
    }
    return std::sqrt(sum);
}

std::vector<Vector> gram_schmidt(std::span<const Vector> vectors, const Tolerance& tol)
{
    std::vector<Vector> basis;
    basis.reserve(vectors.size());
    for (std::size_t idx = 0; idx < vectors.size(); ++idx) {
        Vector v = vectors[idx];
        if (!basis.empty() && v.size() != basis.front().size()) {
            fail(ErrorKind::Dimension, "gram_schmidt input vectors have different lengths");
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vector& u : basis) {
                const Complex c = dot(u, v);
                for (std::size_t i = 0; i < v.size(); ++i) {
                    v[i] -= c * u[i];
                }
            }
        }
        const double n = norm(v);
        if (n < tol.eps_abs) {
            fail(ErrorKind::RankDeficiency,
                 "gram_schmidt: vector " + std::to_string(idx) + " is dependent on its predecessors");
        }
        for (Complex& z : v) {
            z /= n;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t matrix_rank(const Matrix& a, const Tolerance& tol)
{
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    double max_col_norm = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            s += std::norm(a(r, c));
        }
        max_col_norm = std::max(max_col_norm, std::sqrt(s));
    }
    if (max_col_norm == 0.0) {
        return 0;
    }
    const double threshold = tol.eps_abs * max_col_norm;

    Matrix work = a;
    std::size_t rank = 0;
    const std::size_t steps = std::min(rows, cols);
    for (std::size_t step = 0; step < steps; ++step) {
        std::size_t pr = step;
        std::size_t pc = step;
        double best = 0.0;
        for (std::size_t r = step; r < rows; ++r) {
            for (std::size_t c = step; c < cols; ++c) {
                const double v = std::abs(work(r, c));
                if (v > best) {
                    best = v;
                    pr = r;
                    pc = c;
                }
            }
        }
        if (best <= threshold) {
            break;
        }
        if (pr != step) {
            for (std::size_t c = 0; c < cols; ++c) {
                std::swap(work(pr, c), work(step, c));
            }
        }
        if (pc != step) {
            for (std::size_t r = 0; r < rows; ++r) {
                std::swap(work(r, pc), work(r, step));
            }
        }
        const Complex pivot = work(step, step);
        for (std::size_t r = step + 1; r < rows; ++r) {
            const Complex factor = work(r, step) / pivot;
            if (factor == Complex(0.0)) {
                continue;
            }
            for (std::size_t c = step; c < cols; ++c) {
                work(r, c) -= factor * work(step, c);
            }
        }
        ++rank;
    }
    return rank;
}

} // namespace fusionpack
