#include "fusionpack/designs.hpp"

#include "fusionpack/error.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <string>

namespace fusionpack {

namespace {

constexpr std::uint64_t kMaxSubsetTable = std::uint64_t{1} << 27;
constexpr std::size_t kMaxHadamardOrder = 4096;

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        if (result > std::numeric_limits<std::uint64_t>::max() / (n - k + i)) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        result = result * (n - k + i) / i;
    }
    return result;
}

// Containment counts of every s-subset of {0..m-1}, indexed by colex rank.
std::vector<std::size_t> subset_counts(const BlockDesign& d, std::size_t s)
{
    const std::size_t m = d.point_count();
    const std::uint64_t total = binomial(m, s);
    if (total > kMaxSubsetTable) {
        fail(ErrorKind::Parameter, "too many " + std::to_string(s) + "-subsets to count exhaustively");
    }
    std::vector<std::vector<std::uint64_t>> table(m + 1, std::vector<std::uint64_t>(s + 1, 0));
    for (std::size_t x = 0; x <= m; ++x) {
        for (std::size_t k = 0; k <= s; ++k) {
            table[x][k] = binomial(x, k);
        }
    }
    std::vector<std::size_t> counts(static_cast<std::size_t>(total), 0);
    std::vector<std::size_t> pick(s);
    for (const Block& block : d.blocks()) {
        const std::size_t l = block.size();
        if (s > l) {
            continue;
        }
        for (std::size_t i = 0; i < s; ++i) {
            pick[i] = i;
        }
        for (;;) {
            std::uint64_t rank = 0;
            for (std::size_t i = 0; i < s; ++i) {
                rank += table[block[pick[i]]][i + 1];
            }
            ++counts[static_cast<std::size_t>(rank)];
            std::size_t i = s;
            while (i > 0 && pick[i - 1] == l - s + (i - 1)) {
                --i;
            }
            if (i == 0) {
                break;
            }
            ++pick[i - 1];
            for (std::size_t j = i; j < s; ++j) {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }
    return counts;
}

std::optional<std::size_t> constant_count(const std::vector<std::size_t>& counts)
{
    if (counts.empty()) {
        return std::nullopt;
    }
    const std::size_t first = counts.front();
    for (std::size_t c : counts) {
        if (c != first) {
            return std::nullopt;
        }
    }
    return first;
}

} // namespace

BlockDesign::BlockDesign(std::size_t m, std::vector<Block> blocks, std::optional<std::size_t> declared_t,
                         std::optional<std::size_t> declared_lambda)
    : m_(m), blocks_(std::move(blocks)), declared_t_(declared_t), declared_lambda_(declared_lambda)
{
    if (m_ == 0) {
        fail(ErrorKind::Parameter, "design must have at least one point");
    }
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        Block& block = blocks_[i];
        if (block.empty()) {
            fail(ErrorKind::Parameter, "block " + std::to_string(i) + " is empty");
        }
        std::sort(block.begin(), block.end());
        if (std::adjacent_find(block.begin(), block.end()) != block.end()) {
            fail(ErrorKind::Parameter, "block " + std::to_string(i) + " repeats a point");
        }
        if (block.back() >= m_) {
            fail(ErrorKind::Parameter, "block " + std::to_string(i) + " has a point outside {0.." +
                                           std::to_string(m_ - 1) + "}");
        }
        if (block.size() != blocks_.front().size()) {
            fail(ErrorKind::Parameter, "block " + std::to_string(i) + " has size " + std::to_string(block.size()) +
                                           ", expected " + std::to_string(blocks_.front().size()));
        }
    }
}

std::size_t intersection_size(const Block& a, const Block& b)
{
    std::size_t count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

std::size_t cohesion(const BlockDesign& d)
{
    if (d.block_count() < 2) {
        fail(ErrorKind::Parameter, "cohesion needs at least two blocks");
    }
    std::size_t worst = 0;
    const auto& blocks = d.blocks();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (std::size_t j = i + 1; j < blocks.size(); ++j) {
            worst = std::max(worst, intersection_size(blocks[i], blocks[j]));
        }
    }
    return worst;
}

bool is_c_cohesive(const BlockDesign& d, Ratio c)
{
    if (c.den <= 0) {
        fail(ErrorKind::Parameter, "cohesion threshold denominator must be positive");
    }
    if (d.block_count() < 2) {
        return true;
    }
    return static_cast<std::int64_t>(cohesion(d)) * c.den <= c.num;
}

Resolution resolvability(const BlockDesign& d)
{
    Resolution res;
    const std::size_t m = d.point_count();
    const std::size_t l = d.block_size();
    const std::size_t b = d.block_count();
    if (b == 0 || m % l != 0) {
        return res;
    }
    const std::size_t per_class = m / l;
    if (b % per_class != 0) {
        return res;
    }

    std::vector<std::vector<std::size_t>> blocks_with_point(m);
    for (std::size_t i = 0; i < b; ++i) {
        for (std::size_t pt : d.block(i)) {
            blocks_with_point[pt].push_back(i);
        }
    }

    std::vector<bool> assigned(b, false);
    std::vector<bool> covered(m, false);
    std::vector<std::vector<std::size_t>> classes;

    auto place = [&](std::size_t blk, bool on) {
        assigned[blk] = on;
        for (std::size_t pt : d.block(blk)) {
            covered[pt] = on;
        }
    };

    std::function<bool(std::size_t)> solve;
    std::function<bool(std::size_t)> fill = [&](std::size_t done) -> bool {
        auto& cls = classes.back();
        if (cls.size() == per_class) {
            std::fill(covered.begin(), covered.end(), false);
            const bool ok = solve(done);
            if (!ok) {
                for (std::size_t blk : cls) {
                    for (std::size_t pt : d.block(blk)) {
                        covered[pt] = true;
                    }
                }
            }
            return ok;
        }
        std::size_t pt = 0;
        while (covered[pt]) {
            ++pt;
        }
        for (std::size_t blk : blocks_with_point[pt]) {
            if (assigned[blk]) {
                continue;
            }
            bool disjoint = true;
            for (std::size_t q : d.block(blk)) {
                if (covered[q]) {
                    disjoint = false;
                    break;
                }
            }
            if (!disjoint) {
                continue;
            }
            place(blk, true);
            cls.push_back(blk);
            if (fill(done + 1)) {
                return true;
            }
            cls.pop_back();
            place(blk, false);
        }
        return false;
    };
    solve = [&](std::size_t done) -> bool {
        if (done == b) {
            return true;
        }
        std::size_t first = 0;
        while (assigned[first]) {
            ++first;
        }
        classes.push_back({first});
        place(first, true);
        if (fill(done + 1)) {
            return true;
        }
        place(first, false);
        classes.pop_back();
        return false;
    };

    if (!solve(0)) {
        return res;
    }
    res.is_resolvable = true;
    res.parallel_classes = classes;

    std::vector<std::size_t> class_of(b);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (std::size_t blk : classes[c]) {
            class_of[blk] = c;
        }
    }
    std::optional<std::size_t> cross;
    bool constant = true;
    for (std::size_t i = 0; i < b && constant; ++i) {
        for (std::size_t j = i + 1; j < b; ++j) {
            if (class_of[i] == class_of[j]) {
                continue;
            }
            const std::size_t s = intersection_size(d.block(i), d.block(j));
            if (!cross) {
                cross = s;
            } else if (*cross != s) {
                constant = false;
                break;
            }
        }
    }
    res.is_affine = constant && cross.has_value();
    if (res.is_affine) {
        res.cross_intersection = cross;
    }
    const std::size_t r = classes.size();
    res.bose_equality = (b == m + r - 1);
    return res;
}

DesignReport verify_design(const BlockDesign& d, std::size_t t)
{
    const std::size_t l = d.block_size();
    // A declared strength above l (the 3-(4,2,0) design of order 4) is checked
    // as stated: every t-subset then lies in zero blocks.
    const bool declared = d.declared_t() == t && t <= d.point_count();
    if (t == 0 || (t > l && !declared)) {
        fail(ErrorKind::Parameter,
             "verify_design requires 1 <= t <= l (t=" + std::to_string(t) + ", l=" + std::to_string(l) + ")");
    }
    DesignReport rep;
    rep.t = t;
    rep.m = d.point_count();
    rep.l = l;
    rep.b = d.block_count();
    for (std::size_t s = 1; s <= t; ++s) {
        const auto lambda = constant_count(subset_counts(d, s));
        rep.is_t_design.push_back(lambda.has_value());
        rep.lambda_per_level.push_back(lambda);
    }
    rep.lambda_observed = rep.lambda_per_level.back();
    rep.r_observed = rep.lambda_per_level.front();

    std::optional<std::size_t> lambda2;
    if (t >= 2) {
        lambda2 = rep.lambda_per_level[1];
    } else if (l >= 2) {
        lambda2 = constant_count(subset_counts(d, 2));
    }
    rep.is_symmetric = lambda2.has_value() && rep.b == rep.m;
    if (rep.b >= 2) {
        rep.cohesion = cohesion(d);
    }
    if (lambda2.has_value()) {
        rep.resolution = resolvability(d);
    }
    return rep;
}

BlockDesign complement_design(const BlockDesign& d)
{
    const std::size_t m = d.point_count();
    const std::size_t l = d.block_size();
    if (l == m) {
        fail(ErrorKind::Degenerate, "complement of a full block is empty");
    }
    std::vector<Block> out;
    out.reserve(d.block_count());
    for (const Block& block : d.blocks()) {
        Block c;
        c.reserve(m - l);
        std::size_t k = 0;
        for (std::size_t pt = 0; pt < m; ++pt) {
            if (k < block.size() && block[k] == pt) {
                ++k;
            } else {
                c.push_back(pt);
            }
        }
        out.push_back(std::move(c));
    }
    std::optional<std::size_t> t;
    std::optional<std::size_t> lambda;
    if (d.declared_t() == 2 && d.declared_lambda() && d.block_count() == m) {
        t = 2;
        lambda = m - 2 * l + *d.declared_lambda();
    }
    return BlockDesign(m, std::move(out), t, lambda);
}

RebasedDesign design_rebase(const BlockDesign& d)
{
    const std::size_t m = d.point_count();
    const std::size_t l = d.block_size();
    if (l < 2) {
        fail(ErrorKind::Parameter, "design_rebase requires block size >= 2");
    }
    const DesignReport rep = verify_design(d, 2);
    if (!rep.is_symmetric || !rep.lambda_observed) {
        fail(ErrorKind::Parameter, "design_rebase requires a symmetric 2-design");
    }
    if ((m - l) % (l - 1) != 0) {
        fail(ErrorKind::Parameter, "(m - l)/(l - 1) = " + std::to_string(m - l) + "/" + std::to_string(l - 1) +
                                       " is not an integer");
    }
    const std::size_t m_prime = m + (m - l) / (l - 1);
    const std::size_t lambda = *rep.lambda_observed;
    if (lambda * m_prime != l * l) {
        fail(ErrorKind::Internal, "rebased design does not satisfy lambda * m' = l^2");
    }
    return RebasedDesign{m_prime, BlockDesign(m_prime, d.blocks())};
}

HadamardMatrix::HadamardMatrix(std::size_t order, std::vector<int> entries)
    : order_(order), entries_(std::move(entries))
{
    if (order_ == 0 || entries_.size() != order_ * order_) {
        fail(ErrorKind::Parameter, "Hadamard matrix entry count does not match its order");
    }
    for (int e : entries_) {
        if (e != 1 && e != -1) {
            fail(ErrorKind::Parameter, "Hadamard matrix entries must be +1 or -1");
        }
    }
    for (std::size_t i = 0; i < order_; ++i) {
        for (std::size_t j = i; j < order_; ++j) {
            std::int64_t s = 0;
            for (std::size_t k = 0; k < order_; ++k) {
                s += entries_[i * order_ + k] * entries_[j * order_ + k];
            }
            const std::int64_t expected = (i == j) ? static_cast<std::int64_t>(order_) : 0;
            if (s != expected) {
                fail(ErrorKind::Parameter, "H H^T != order I at (" + std::to_string(i) + ", " + std::to_string(j) +
                                               ")");
            }
        }
    }
}

HadamardMatrix kronecker(const HadamardMatrix& a, const HadamardMatrix& b)
{
    const std::size_t n = a.order() * b.order();
    std::vector<int> e(n * n);
    for (std::size_t i = 0; i < a.order(); ++i) {
        for (std::size_t j = 0; j < a.order(); ++j) {
            for (std::size_t k = 0; k < b.order(); ++k) {
                for (std::size_t l = 0; l < b.order(); ++l) {
                    e[(i * b.order() + k) * n + (j * b.order() + l)] = a(i, j) * b(k, l);
                }
            }
        }
    }
    return HadamardMatrix(n, std::move(e));
}

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

bool paley_applies(std::size_t order)
{
    if (order < 4) {
        return false;
    }
    const std::size_t q = order - 1;
    return q % 4 == 3 && is_prime(q);
}

HadamardMatrix paley_one(std::size_t q)
{
    // chi(a) = Legendre symbol of a mod q
    std::vector<int> chi(q, -1);
    chi[0] = 0;
    for (std::size_t x = 1; x < q; ++x) {
        chi[(x * x) % q] = 1;
    }
    const std::size_t n = q + 1;
    std::vector<int> e(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1;
    }
    for (std::size_t i = 0; i < q; ++i) {
        e[(i + 1) * n] = -1;
        for (std::size_t j = 0; j < q; ++j) {
            const int v = chi[(j + q - i) % q] + (i == j ? 1 : 0);
            e[(i + 1) * n + (j + 1)] = v;
        }
    }
    return HadamardMatrix(n, std::move(e));
}

} // namespace

bool hadamard_order_supported(std::size_t order)
{
    if (order == 0 || order > kMaxHadamardOrder) {
        return false;
    }
    if (order <= 2 || is_power_of_two(order) || paley_applies(order)) {
        return true;
    }
    if (order % 4 != 0) {
        return false;
    }
    for (std::size_t a = 2; a * a <= order; ++a) {
        if (order % a == 0 && hadamard_order_supported(a) && hadamard_order_supported(order / a)) {
            return true;
        }
    }
    return false;
}

HadamardMatrix gen_hadamard(std::size_t order)
{
    if (!hadamard_order_supported(order)) {
        fail(ErrorKind::Unsupported, "no Sylvester/Paley/product construction for Hadamard order " +
                                         std::to_string(order) + "; import the matrix instead");
    }
    static const HadamardMatrix h2(2, {1, 1, 1, -1});
    if (order == 1) {
        return HadamardMatrix(1, {1});
    }
    if (order == 2) {
        return h2;
    }
    if (is_power_of_two(order)) {
        return kronecker(h2, gen_hadamard(order / 2));
    }
    if (paley_applies(order)) {
        return paley_one(order - 1);
    }
    if (hadamard_order_supported(order / 2)) {
        return kronecker(h2, gen_hadamard(order / 2));
    }
    for (std::size_t a = 2; a * a <= order; ++a) {
        if (order % a == 0 && hadamard_order_supported(a) && hadamard_order_supported(order / a)) {
            return kronecker(gen_hadamard(a), gen_hadamard(order / a));
        }
    }
    fail(ErrorKind::Internal, "Hadamard order marked supported but not constructed");
}

BlockDesign hadamard_to_3design(const HadamardMatrix& h)
{
    const std::size_t n = h.order();
    if (n < 4 || n % 4 != 0) {
        fail(ErrorKind::Parameter, "Hadamard 3-design needs an order divisible by 4, got " + std::to_string(n));
    }
    std::vector<Block> plus;
    std::vector<Block> minus;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        Block jp;
        Block jm;
        for (std::size_t j = 0; j < n; ++j) {
            const int normalized = h(i, j) * h(n - 1, j);
            (normalized == 1 ? jp : jm).push_back(j);
        }
        plus.push_back(std::move(jp));
        minus.push_back(std::move(jm));
    }
    plus.insert(plus.end(), minus.begin(), minus.end());
    return BlockDesign(n, std::move(plus), 3, n / 4 - 1);
}

} // namespace fusionpack
