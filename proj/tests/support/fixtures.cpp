#include "fixtures.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace fixtures {

std::size_t gf2_rank(std::vector<unsigned> rows)
{
    std::size_t rank = 0;
    for (unsigned bit = 0; bit < 32; ++bit) {
        const unsigned mask = 1u << bit;
        std::size_t pivot = rank;
        while (pivot < rows.size() && !(rows[pivot] & mask)) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && (rows[r] & mask)) {
                rows[r] ^= rows[rank];
            }
        }
        ++rank;
    }
    return rank;
}

namespace {

// Alternating form on GF(2)^4 packed as 6 bits for pairs (i<j) in lex order.
constexpr std::size_t kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

bool symplectic_nonsingular(unsigned form)
{
    std::vector<unsigned> rows(4, 0);
    for (std::size_t k = 0; k < 6; ++k) {
        if (form & (1u << k)) {
            rows[kPairs[k][0]] |= 1u << kPairs[k][1];
            rows[kPairs[k][1]] |= 1u << kPairs[k][0];
        }
    }
    return gf2_rank(rows) == 4;
}

std::vector<unsigned> kerdock_forms()
{
    std::vector<unsigned> chosen{0};
    std::function<bool(unsigned)> extend = [&](unsigned next) -> bool {
        if (chosen.size() == 8) {
            return true;
        }
        for (unsigned f = next; f < 64; ++f) {
            bool ok = true;
            for (unsigned g : chosen) {
                if (!symplectic_nonsingular(f ^ g)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) {
                continue;
            }
            chosen.push_back(f);
            if (extend(f + 1)) {
                return true;
            }
            chosen.pop_back();
        }
        return false;
    };
    if (!extend(1)) {
        throw std::logic_error("no Kerdock set of size 8");
    }
    return chosen;
}

unsigned bit(std::size_t x, std::size_t i) { return static_cast<unsigned>((x >> i) & 1u); }

} // namespace

MubFamily kerdock_real16()
{
    MubFamily f;
    f.m = 16;
    f.field = Field::Real;
    f.bases.emplace_back(Field::Real, Matrix::identity(16));
    for (unsigned form : kerdock_forms()) {
        Matrix b(16, 16);
        for (std::size_t x = 0; x < 16; ++x) {
            unsigned q = 0;
            for (std::size_t k = 0; k < 6; ++k) {
                if (form & (1u << k)) {
                    q ^= bit(x, kPairs[k][0]) & bit(x, kPairs[k][1]);
                }
            }
            for (std::size_t col = 0; col < 16; ++col) {
                unsigned e = q;
                for (std::size_t i = 0; i < 4; ++i) {
                    e ^= bit(x, i) & bit(col, i);
                }
                b(x, col) = e ? -0.25 : 0.25;
            }
        }
        f.bases.emplace_back(Field::Real, std::move(b));
    }
    return f;
}

MubFamily quaternary_c8()
{
    static const int kForms[8][3][3] = {
        {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}, {{0, 1, 0}, {1, 1, 0}, {0, 0, 1}},
        {{0, 1, 1}, {1, 0, 0}, {1, 0, 1}}, {{1, 0, 0}, {0, 0, 1}, {0, 1, 1}}, {{1, 0, 1}, {0, 1, 1}, {1, 1, 1}},
        {{1, 1, 0}, {1, 1, 1}, {0, 1, 0}}, {{1, 1, 1}, {1, 0, 1}, {1, 1, 0}},
    };
    const Complex phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const double scale = 1.0 / std::sqrt(8.0);
    MubFamily f;
    f.m = 8;
    f.field = Field::Complex;
    f.bases.emplace_back(Field::Complex, Matrix::identity(8));
    for (const auto& s : kForms) {
        Matrix b(8, 8);
        for (std::size_t x = 0; x < 8; ++x) {
            int quad = 0;
            for (std::size_t i = 0; i < 3; ++i) {
                for (std::size_t j = 0; j < 3; ++j) {
                    quad += s[i][j] * static_cast<int>(bit(x, i) * bit(x, j));
                }
            }
            for (std::size_t col = 0; col < 8; ++col) {
                int lin = 0;
                for (std::size_t i = 0; i < 3; ++i) {
                    lin += static_cast<int>(bit(x, i) * bit(col, i));
                }
                b(x, col) = scale * phases[(quad + 2 * lin) % 4];
            }
        }
        f.bases.emplace_back(Field::Complex, std::move(b));
    }
    return f;
}

BlockDesign difference_set_16_6_2()
{
    std::vector<std::size_t> base;
    for (std::size_t x = 0; x < 16; ++x) {
        if (((bit(x, 0) & bit(x, 1)) ^ (bit(x, 2) & bit(x, 3))) == 1) {
            base.push_back(x);
        }
    }
    std::vector<Block> blocks;
    for (std::size_t g = 0; g < 16; ++g) {
        Block b;
        for (std::size_t x : base) {
            b.push_back(x ^ g);
        }
        blocks.push_back(b);
    }
    return BlockDesign(16, blocks, 2, 2);
}

BlockDesign quadratic_residue_design(std::size_t p)
{
    std::vector<bool> residue(p, false);
    for (std::size_t x = 1; x < p; ++x) {
        residue[x * x % p] = true;
    }
    std::vector<Block> blocks;
    for (std::size_t g = 0; g < p; ++g) {
        Block b;
        for (std::size_t r = 1; r < p; ++r) {
            if (residue[r]) {
                b.push_back((r + g) % p);
            }
        }
        blocks.push_back(b);
    }
    return BlockDesign(p, blocks, 2, (p - 3) / 4);
}

BlockDesign singletons(std::size_t m)
{
    std::vector<Block> blocks;
    for (std::size_t j = 0; j < m; ++j) {
        blocks.push_back({j});
    }
    return BlockDesign(m, blocks);
}

BlockDesign fano()
{
    // Lines {i, i+1, i+3} mod 7.
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < 7; ++i) {
        blocks.push_back({i, (i + 1) % 7, (i + 3) % 7});
    }
    return BlockDesign(7, blocks, 2, 1);
}

double naive_trace_product(const Matrix& a, const Matrix& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            s += (a(i, k) * b(k, i)).real();
        }
    }
    return s;
}

std::vector<double> naive_embedded_coords(const Matrix& p, std::size_t rank, const EmbeddingSpace& space)
{
    const std::size_t m = space.m();
    Matrix t = p;
    for (std::size_t i = 0; i < m; ++i) {
        t(i, i) -= static_cast<double>(rank) / static_cast<double>(m);
    }
    const double r = std::sqrt(static_cast<double>(rank * (m - rank)) / static_cast<double>(m));
    std::vector<double> out;
    for (std::size_t i = 0; i < space.dimension(); ++i) {
        out.push_back(naive_trace_product(t, space.basis_matrix(i)) / r);
    }
    return out;
}

Matrix random_hermitian(std::size_t m, Field field, std::mt19937_64& rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix a(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        a(i, i) = g(rng);
        for (std::size_t j = i + 1; j < m; ++j) {
            const Complex z(g(rng), field == Field::Complex ? g(rng) : 0.0);
            a(i, j) = z;
            a(j, i) = std::conj(z);
        }
    }
    return a;
}

double max_abs_diff(const Matrix& a, const Matrix& b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        }
    }
    return worst;
}

} // namespace fixtures
