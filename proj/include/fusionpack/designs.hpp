#pragma once

#include "fusionpack/finite_field.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace fusionpack {

using Block = std::vector<std::size_t>;

/// Ordered multiset of equal-size blocks over the points {0..m-1}.
///
/// Blocks are kept sorted; repeated blocks are allowed and keep their
/// position, so a design built as S followed by its complement remembers which
/// half each block came from.
class BlockDesign {
public:
    /// Parameter error if a block is empty, has out-of-range or repeated
    /// points, or the block sizes differ.
    BlockDesign(std::size_t m, std::vector<Block> blocks, std::optional<std::size_t> declared_t = std::nullopt,
                std::optional<std::size_t> declared_lambda = std::nullopt);

    static BlockDesign from_point_sets(std::size_t m, std::vector<PointSet> sets)
    {
        return BlockDesign(m, std::move(sets));
    }

    std::size_t point_count() const noexcept { return m_; }
    std::size_t block_size() const noexcept { return blocks_.empty() ? 0 : blocks_.front().size(); }
    std::size_t block_count() const noexcept { return blocks_.size(); }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    const Block& block(std::size_t i) const { return blocks_.at(i); }

    std::optional<std::size_t> declared_t() const noexcept { return declared_t_; }
    std::optional<std::size_t> declared_lambda() const noexcept { return declared_lambda_; }

    friend bool operator==(const BlockDesign&, const BlockDesign&) = default;

private:
    std::size_t m_;
    std::vector<Block> blocks_;
    std::optional<std::size_t> declared_t_;
    std::optional<std::size_t> declared_lambda_;
};

/// Exact rational p/q with q > 0, for cohesion thresholds such as l^2/m.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

std::size_t intersection_size(const Block& a, const Block& b);

/// Maximum |J n J'| over distinct block positions. Parameter error for fewer
/// than two blocks.
std::size_t cohesion(const BlockDesign& d);

/// cohesion(d) <= c, compared by cross-multiplication. Designs with a single
/// block are c-cohesive for every c.
bool is_c_cohesive(const BlockDesign& d, Ratio c);

struct Resolution {
    bool is_resolvable = false;
    std::vector<std::vector<std::size_t>> parallel_classes; // block indices
    bool is_affine = false;
    std::optional<std::size_t> cross_intersection; // constant cross-class |J n J'| when affine
    bool bose_equality = false;                    // b == m + r - 1
};

/// Exact backtracking search for a partition of the blocks into parallel
/// classes (disjoint blocks covering every point).
Resolution resolvability(const BlockDesign& d);

struct DesignReport {
    std::size_t t = 0;
    /// is_t_design[i] <=> every (i+1)-subset lies in a constant number of blocks.
    std::vector<bool> is_t_design;
    /// Constant containment count for each level, when it is constant.
    std::vector<std::optional<std::size_t>> lambda_per_level;
    std::optional<std::size_t> lambda_observed; // level t
    std::optional<std::size_t> r_observed;      // level 1
    std::size_t m = 0;
    std::size_t l = 0;
    std::size_t b = 0;
    bool is_symmetric = false; // 2-design with b == m
    std::optional<std::size_t> cohesion;
    Resolution resolution;

    bool is_design() const { return !is_t_design.empty() && is_t_design.back(); }
};

/// Counts containment of every s-subset, s = 1..t, exhaustively. Parameter
/// error if t == 0 or t > l, unless t is the design's declared strength.
DesignReport verify_design(const BlockDesign& d, std::size_t t);

/// Blocks J -> {0..m-1} \ J in the same order. Degenerate error if l == m.
BlockDesign complement_design(const BlockDesign& d);

struct RebasedDesign {
    std::size_t m_prime = 0;
    BlockDesign design;
};

/// Re-declares the blocks of a symmetric (m, l, lambda) design over
/// m' = m + (m - l)/(l - 1) points, where lambda = l^2/m'.
RebasedDesign design_rebase(const BlockDesign& d);

/// Exact +-1 matrix with H H^T = order I.
class HadamardMatrix {
public:
    /// Parameter error unless entries are +-1 and H H^T = order I.
    HadamardMatrix(std::size_t order, std::vector<int> entries);

    std::size_t order() const noexcept { return order_; }
    int operator()(std::size_t r, std::size_t c) const { return entries_[r * order_ + c]; }
    const std::vector<int>& entries() const noexcept { return entries_; }

    friend bool operator==(const HadamardMatrix&, const HadamardMatrix&) = default;

private:
    std::size_t order_;
    std::vector<int> entries_;
};

bool hadamard_order_supported(std::size_t order);

/// Sylvester doubling, Paley I (q prime, q = 3 mod 4) and Kronecker products.
/// Powers of two use Sylvester; otherwise Paley is preferred. Unsupported
/// error when the order is not reachable.
HadamardMatrix gen_hadamard(std::size_t order);

HadamardMatrix kronecker(const HadamardMatrix& a, const HadamardMatrix& b);

/// Normalizes columns so the last row is all +1, then reads J_i = {j : h_ij = +1}
/// from each other row. Blocks are ordered J_0..J_{n-2} followed by their
/// complements. The result declares t = 3, lambda = order/4 - 1.
BlockDesign hadamard_to_3design(const HadamardMatrix& h);

} // namespace fusionpack
