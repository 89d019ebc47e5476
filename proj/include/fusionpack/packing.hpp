#pragma once

#include "fusionpack/designs.hpp"
#include "fusionpack/embedding.hpp"
#include "fusionpack/mubs.hpp"
#include "fusionpack/projection.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fusionpack {

/// Outcome of validating a construction's hypotheses. A packing whose
/// hypotheses failed is still built so it can be inspected, but certify()
/// refuses it.
struct HypothesisRecord {
    std::string construction = "imported";
    bool passed = true;
    std::vector<std::string> checks;
    std::vector<std::string> failures;
    bool candidate_maximal = false;

    friend bool operator==(const HypothesisRecord&, const HypothesisRecord&) = default;
};

struct RankClass {
    std::size_t count = 0; // n_i
    std::size_t rank = 0;  // l_i

    friend bool operator==(const RankClass&, const RankClass&) = default;
};

class Packing {
public:
    /// Dimension error if an element is not m x m; parameter error if a
    /// Real-tagged packing holds complex entries.
    Packing(std::size_t m, Field field, std::vector<Projection> elements, HypothesisRecord hypotheses = {});

    std::size_t m() const noexcept { return m_; }
    Field field() const noexcept { return field_; }
    std::size_t size() const noexcept { return elements_.size(); }
    const std::vector<Projection>& elements() const noexcept { return elements_; }
    const Projection& element(std::size_t i) const { return elements_.at(i); }
    const HypothesisRecord& hypotheses() const noexcept { return hypotheses_; }

    /// (n_i, l_i) in order of first appearance.
    const std::vector<RankClass>& rank_profile() const noexcept { return profile_; }
    std::size_t mixture() const noexcept { return profile_.size(); }

private:
    std::size_t m_;
    Field field_;
    std::vector<Projection> elements_;
    HypothesisRecord hypotheses_;
    std::vector<RankClass> profile_;
};

/// Coordinate projections P^{B_k}_J for k in A_i, J in S_i, ordered by
/// (i, k, block). Hypotheses (each S_i is l_i^2/m-cohesive, n > d+1) are
/// recorded rather than enforced. Parameter error for overlapping or
/// out-of-range partitions; dimension error when a design is not over m points.
Packing build_mixed_packing(const MubFamily& mubs, const std::vector<BlockDesign>& designs,
                            const std::vector<std::vector<std::size_t>>& partition);

/// Coordinate projections P^{B_k}_J for every basis k and J in S followed by
/// its complement. Hypothesis error naming the first pair with
/// m |J n J'| != l^2. Tags the packing candidate-maximal when |S| = m-1 and
/// the family is maximal.
Packing build_orthoplex_packing(const MubFamily& mubs, const BlockDesign& s);

struct PairClassSummary {
    std::size_t pairs = 0;
    double max_inner = -std::numeric_limits<double>::infinity();
};

struct CoherenceReport {
    double mu_embedded = -1.0;
    std::pair<std::size_t, std::size_t> argmax{0, 0};
    double min_inner = 1.0;
    PairClassSummary same_basis_same_rank;
    PairClassSummary same_basis_cross_rank;
    PairClassSummary cross_basis_same_rank;
    PairClassSummary cross_basis_cross_rank;
    PairClassSummary unclassified; // at least one imported element
    /// Elements with a partner whose embedded inner product is within eps_abs
    /// of mu_embedded.
    std::vector<std::size_t> achievers;
    /// max tr(P_i P_j) for constant-rank packings.
    std::optional<double> raw_coherence;
};

/// All n(n-1)/2 embedded inner products from traces, in (i < j) row order.
std::vector<double> pairwise_inner_products(const Packing& pk);

/// Pair scan via the trace identity, parallel over rows. `workers` = 0 picks
/// a count from the hardware. Parameter error for fewer than two elements;
/// degenerate error for rank 0 or m elements.
CoherenceReport coherence(const Packing& pk, const EmbeddingSpace& space, const Tolerance& tol,
                          std::size_t workers = 0);

struct TightnessReport {
    bool is_tight = false;
    double constant = 0.0;  // tr(F)/m
    double deviation = 0.0; // max |F - constant I|
};

TightnessReport check_tightness(const Packing& pk, const Tolerance& tol);

/// {I - P_i} in the same order. Degenerate error for a full-rank element.
Packing spatial_complement(const Packing& pk);

struct OrthoplexReport {
    bool passed = false;
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t antipodal_pairs = 0;
    std::vector<std::optional<std::size_t>> partner;
    double worst_antipodal_deviation = 0.0; // max |<v_i, v_partner> + 1|
    double worst_orthogonal_deviation = 0.0; // max |<v_i, v_j>| over non-partners
    std::vector<std::string> failures;
};

/// Checks that the embedded code is a full orthoplex: n = 2d, every vector
/// has exactly one antipode, all other inner products vanish, and each
/// antipodal pair is a complementary pair of subspaces.
OrthoplexReport verify_orthoplex_geometry(const Packing& pk, const EmbeddingSpace& space, const Tolerance& tol);

enum class CertificateStatus { OptimalOrthoplexRegime, OptimalSimplexRegime, MaximalOrthoplex, NotCertified };

const char* to_string(CertificateStatus status);
CertificateStatus parse_certificate_status(const std::string& s);
inline bool is_certified(CertificateStatus s) { return s != CertificateStatus::NotCertified; }

struct Certificate {
    CertificateStatus status = CertificateStatus::NotCertified;
    std::size_t m = 0;
    Field field = Field::Complex;
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<RankClass> rank_profile;
    double mu_embedded = 0.0;
    double embedded_simplex_bound = 0.0;                // -1/(n-1)
    std::optional<double> embedded_orthoplex_bound;     // 0 when n > d+1
    std::optional<double> raw_coherence;                // constant rank
    std::optional<double> simplex_bound;                // (n l^2 - m l)/(m (n-1)), constant rank
    std::optional<double> orthoplex_bound;              // l^2/m, constant rank
    bool is_tight = false;
    double tight_constant = 0.0;
    double tightness_deviation = 0.0;
    std::vector<std::string> details;
};

/// Decision ladder: n > d+1 and mu <= eps_abs gives the orthoplex regime,
/// refined to MaximalOrthoplex when n = 2d and the geometry verifies;
/// mu = -1/(n-1) gives the simplex regime; anything else is NotCertified,
/// which is not a claim of suboptimality. Hypothesis error for packings whose
/// construction hypotheses failed.
Certificate certify(const Packing& pk, const EmbeddingSpace& space, const CoherenceReport& report,
                    const Tolerance& tol);
Certificate certify(const Packing& pk, const EmbeddingSpace& space, const Tolerance& tol);

struct AchieverSpan {
    std::size_t dimension = 0;
    bool is_full = false;
};

/// Rank of the union of orthonormal bases of the achiever subspaces.
/// Parameter error when n < m. When `status` is certified, a span short of
/// F^m contradicts the spanning property of optimal packings and raises an
/// internal error.
AchieverSpan span_of_achievers(const Packing& pk, const CoherenceReport& report, CertificateStatus status,
                               const Tolerance& tol);

/// Orthonormal basis of the range of a projection (pivoted Gram-Schmidt on
/// its columns).
std::vector<Vector> range_basis(const Projection& p, const Tolerance& tol);

/// Recovers a Hadamard matrix from a constant-rank maximal orthoplectic
/// packing built from the complement-closed design `s`: one block per
/// complementary pair (the one containing point 0) gives a +1 row pattern,
/// closed by an all +1 row.
HadamardMatrix extract_hadamard(const Packing& pk, const BlockDesign& s, const EmbeddingSpace& space,
                                const Tolerance& tol);

/// Blocks of the coordinate projections taken from basis k, in packing order.
std::vector<Block> blocks_for_basis(const Packing& pk, std::size_t k);

} // namespace fusionpack
