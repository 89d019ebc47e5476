#include "fusionpack/packing.hpp"

#include "fusionpack/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

namespace fusionpack {

Packing::Packing(std::size_t m, Field field, std::vector<Projection> elements, HypothesisRecord hypotheses)
    : m_(m), field_(field), elements_(std::move(elements)), hypotheses_(std::move(hypotheses))
{
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        const Projection& p = elements_[i];
        if (p.dimension() != m_ || !p.matrix().is_square()) {
            fail(ErrorKind::Dimension, "element " + std::to_string(i) + " is not " + std::to_string(m_) + "x" +
                                           std::to_string(m_));
        }
        if (field_ == Field::Real && !p.matrix().is_real()) {
            fail(ErrorKind::Parameter, "element " + std::to_string(i) + " of a real packing has imaginary parts");
        }
        auto it = std::find_if(profile_.begin(), profile_.end(),
                               [&](const RankClass& rc) { return rc.rank == p.rank(); });
        if (it == profile_.end()) {
            profile_.push_back({1, p.rank()});
        } else {
            ++it->count;
        }
    }
}

namespace {

std::string ratio_text(std::int64_t num, std::int64_t den)
{
    return std::to_string(num) + "/" + std::to_string(den);
}

void validate_family(const MubFamily& mubs)
{
    if (mubs.bases.empty()) {
        fail(ErrorKind::Parameter, "MUB family is empty");
    }
    for (const Basis& b : mubs.bases) {
        if (b.dimension() != mubs.m) {
            fail(ErrorKind::Dimension, "MUB family basis has the wrong dimension");
        }
    }
}

} // namespace

Packing build_mixed_packing(const MubFamily& mubs, const std::vector<BlockDesign>& designs,
                            const std::vector<std::vector<std::size_t>>& partition)
{
    validate_family(mubs);
    const std::size_t m = mubs.m;
    const std::size_t k = mubs.size();
    const std::size_t s = designs.size();
    if (partition.size() != s) {
        fail(ErrorKind::Parameter, "partition has " + std::to_string(partition.size()) + " sets for " +
                                       std::to_string(s) + " designs");
    }
    if (s == 0) {
        fail(ErrorKind::Parameter, "at least one design is required");
    }
    if (s > k) {
        fail(ErrorKind::Parameter, "more designs than bases");
    }
    std::vector<bool> used(k, false);
    for (std::size_t i = 0; i < s; ++i) {
        if (partition[i].empty()) {
            fail(ErrorKind::Parameter, "partition set " + std::to_string(i) + " is empty");
        }
        for (std::size_t idx : partition[i]) {
            if (idx >= k) {
                fail(ErrorKind::Parameter, "basis index " + std::to_string(idx) + " outside the family of " +
                                               std::to_string(k));
            }
            if (used[idx]) {
                fail(ErrorKind::Parameter, "basis index " + std::to_string(idx) + " appears in two partition sets");
            }
            used[idx] = true;
        }
        if (designs[i].point_count() != m) {
            fail(ErrorKind::Dimension, "design " + std::to_string(i) + " is over " +
                                           std::to_string(designs[i].point_count()) + " points, expected " +
                                           std::to_string(m));
        }
    }

    HypothesisRecord hyp;
    hyp.construction = "mixed";
    std::vector<Projection> elements;
    std::size_t n = 0;
    for (std::size_t i = 0; i < s; ++i) {
        const BlockDesign& design = designs[i];
        const std::int64_t l = static_cast<std::int64_t>(design.block_size());
        const Ratio threshold{l * l, static_cast<std::int64_t>(m)};
        std::ostringstream os;
        os << "S_" << i << " is l^2/m = " << ratio_text(threshold.num, threshold.den) << "-cohesive";
        if (design.block_count() >= 2) {
            os << " (cohesion " << cohesion(design) << ")";
        }
        if (is_c_cohesive(design, threshold)) {
            hyp.checks.push_back(os.str());
        } else {
            hyp.failures.push_back("not satisfied: " + os.str());
        }
        n += design.block_count() * partition[i].size();
        for (std::size_t basis : partition[i]) {
            for (const Block& block : design.blocks()) {
                elements.push_back(coordinate_projection(mubs.bases[basis], block, Provenance{i, basis, block, false}));
            }
        }
    }
    const std::size_t d = embedding_dimension(m, mubs.field);
    std::ostringstream os;
    os << "n = " << n << " > d+1 = " << d + 1;
    if (n > d + 1) {
        hyp.checks.push_back(os.str());
    } else {
        hyp.failures.push_back("not satisfied: " + os.str());
    }
    hyp.passed = hyp.failures.empty();
    return Packing(m, mubs.field, std::move(elements), std::move(hyp));
}

Packing build_orthoplex_packing(const MubFamily& mubs, const BlockDesign& s)
{
    validate_family(mubs);
    const std::size_t m = mubs.m;
    if (s.point_count() != m) {
        fail(ErrorKind::Dimension, "design is over " + std::to_string(s.point_count()) + " points, expected " +
                                       std::to_string(m));
    }
    const std::size_t l = s.block_size();
    if (l >= m) {
        fail(ErrorKind::Parameter, "blocks must be proper subsets so their complements are nonempty");
    }
    for (std::size_t i = 0; i < s.block_count(); ++i) {
        for (std::size_t j = i + 1; j < s.block_count(); ++j) {
            const std::size_t inter = intersection_size(s.block(i), s.block(j));
            if (inter * m != l * l) {
                fail(ErrorKind::Hypothesis, "blocks " + std::to_string(i) + " and " + std::to_string(j) +
                                                " intersect in " + std::to_string(inter) + " points; need l^2/m = " +
                                                ratio_text(static_cast<std::int64_t>(l * l),
                                                           static_cast<std::int64_t>(m)));
            }
        }
    }
    const BlockDesign sc = complement_design(s);

    HypothesisRecord hyp;
    hyp.construction = "orthoplex";
    hyp.checks.push_back("all distinct blocks intersect in l^2/m = " +
                         ratio_text(static_cast<std::int64_t>(l * l), static_cast<std::int64_t>(m)) + " points");
    std::vector<Projection> elements;
    for (std::size_t k = 0; k < mubs.size(); ++k) {
        for (const Block& block : s.blocks()) {
            elements.push_back(coordinate_projection(mubs.bases[k], block, Provenance{0, k, block, false}));
        }
        for (const Block& block : sc.blocks()) {
            elements.push_back(coordinate_projection(mubs.bases[k], block, Provenance{1, k, block, false}));
        }
    }
    const std::size_t n = elements.size();
    const std::size_t d = embedding_dimension(m, mubs.field);
    std::ostringstream os;
    os << "n = 2|S|k = " << n << " > d+1 = " << d + 1;
    if (n > d + 1) {
        hyp.checks.push_back(os.str());
    } else {
        hyp.failures.push_back("not satisfied: " + os.str());
    }
    hyp.candidate_maximal = s.block_count() == m - 1 && mubs.size() == mub_cardinality_bound(m, mubs.field);
    if (hyp.candidate_maximal) {
        hyp.checks.push_back("|S| = m-1 with a maximal MUB family: candidate maximal orthoplectic fusion frame");
    }
    hyp.passed = hyp.failures.empty();
    return Packing(m, mubs.field, std::move(elements), std::move(hyp));
}

namespace {

// Real vectors w_i with <w_i, w_j> = tr(P_i P_j) for Hermitian P_i, P_j.
struct TraceVectors {
    std::size_t length = 0;
    std::vector<double> data;

    const double* row(std::size_t i) const { return data.data() + i * length; }
};

TraceVectors flatten(const Packing& pk)
{
    const std::size_t m = pk.m();
    const bool complex = pk.field() == Field::Complex;
    const std::size_t off = m * (m - 1) / 2;
    TraceVectors tv;
    tv.length = m + off * (complex ? 2 : 1);
    tv.data.assign(tv.length * pk.size(), 0.0);
    const double r2 = std::sqrt(2.0);
    for (std::size_t e = 0; e < pk.size(); ++e) {
        const Matrix& p = pk.element(e).matrix();
        double* w = tv.data.data() + e * tv.length;
        std::size_t pos = 0;
        for (std::size_t i = 0; i < m; ++i) {
            w[pos++] = p(i, i).real();
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                w[pos++] = r2 * p(i, j).real();
                if (complex) {
                    w[pos++] = r2 * p(i, j).imag();
                }
            }
        }
    }
    return tv;
}

double row_dot(const double* a, const double* b, std::size_t len)
{
    double s0 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    for (; i < len; ++i) {
        s0 += a[i] * b[i];
    }
    return (s0 + s1) + (s2 + s3);
}

void require_all_embeddable(const Packing& pk)
{
    for (std::size_t i = 0; i < pk.size(); ++i) {
        const std::size_t l = pk.element(i).rank();
        if (l == 0 || l >= pk.m()) {
            fail(ErrorKind::Degenerate, "element " + std::to_string(i) + " has rank " + std::to_string(l) +
                                            " and no embedded vector");
        }
    }
}

std::vector<std::vector<double>> scale_table(std::size_t m)
{
    std::vector<std::vector<double>> t(m + 1, std::vector<double>(m + 1, 0.0));
    for (std::size_t a = 1; a < m; ++a) {
        for (std::size_t b = 1; b < m; ++b) {
            t[a][b] = embedded_inner_from_trace(0.0, m, a, b) /
                      (-static_cast<double>(a * b) / static_cast<double>(m));
        }
    }
    return t;
}

std::size_t worker_count(std::size_t rows)
{
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (rows < 128) {
        return 1;
    }
    return std::min(hw, rows / 64);
}

bool before(std::pair<std::size_t, std::size_t> a, std::pair<std::size_t, std::size_t> b) { return a < b; }

void merge_class(PairClassSummary& into, const PairClassSummary& from)
{
    into.pairs += from.pairs;
    into.max_inner = std::max(into.max_inner, from.max_inner);
}

} // namespace

std::vector<double> pairwise_inner_products(const Packing& pk)
{
    require_all_embeddable(pk);
    const TraceVectors tv = flatten(pk);
    const auto scale = scale_table(pk.m());
    const double md = static_cast<double>(pk.m());
    std::vector<double> out;
    out.reserve(pk.size() * (pk.size() - (pk.size() > 0 ? 1 : 0)) / 2);
    for (std::size_t i = 0; i < pk.size(); ++i) {
        const std::size_t li = pk.element(i).rank();
        for (std::size_t j = i + 1; j < pk.size(); ++j) {
            const std::size_t lj = pk.element(j).rank();
            const double tr = row_dot(tv.row(i), tv.row(j), tv.length);
            out.push_back(scale[li][lj] * (tr - static_cast<double>(li * lj) / md));
        }
    }
    return out;
}

CoherenceReport coherence(const Packing& pk, const EmbeddingSpace& space, const Tolerance& tol,
                          std::size_t requested_workers)
{
    const std::size_t n = pk.size();
    if (n < 2) {
        fail(ErrorKind::Parameter, "coherence needs at least two elements");
    }
    if (space.m() != pk.m()) {
        fail(ErrorKind::Dimension, "embedding space does not match the packing dimension");
    }
    require_all_embeddable(pk);
    const TraceVectors tv = flatten(pk);
    const auto scale = scale_table(pk.m());
    const double md = static_cast<double>(pk.m());
    const bool constant_rank = pk.mixture() == 1;

    struct Local {
        double best = -std::numeric_limits<double>::infinity();
        std::pair<std::size_t, std::size_t> argmax{0, 0};
        double worst = std::numeric_limits<double>::infinity();
        std::vector<double> row_max;
        PairClassSummary classes[5];
        double raw = -std::numeric_limits<double>::infinity();
    };

    const std::size_t workers = requested_workers == 0 ? worker_count(n) : std::min(requested_workers, n);
    std::vector<Local> locals(workers);
    auto scan = [&](std::size_t w) {
        Local& loc = locals[w];
        loc.row_max.assign(n, -std::numeric_limits<double>::infinity());
        for (std::size_t i = w; i < n; i += workers) {
            const Projection& pi = pk.element(i);
            const std::size_t li = pi.rank();
            const auto& prov_i = pi.provenance();
            for (std::size_t j = i + 1; j < n; ++j) {
                const Projection& pj = pk.element(j);
                const std::size_t lj = pj.rank();
                const double tr = row_dot(tv.row(i), tv.row(j), tv.length);
                const double v = scale[li][lj] * (tr - static_cast<double>(li * lj) / md);
                if (v > loc.best || (v == loc.best && before({i, j}, loc.argmax))) {
                    loc.best = v;
                    loc.argmax = {i, j};
                }
                loc.worst = std::min(loc.worst, v);
                loc.row_max[i] = std::max(loc.row_max[i], v);
                loc.row_max[j] = std::max(loc.row_max[j], v);
                if (constant_rank) {
                    loc.raw = std::max(loc.raw, tr);
                }
                const auto& prov_j = pj.provenance();
                std::size_t cls = 4;
                if (prov_i.basis_index && prov_j.basis_index) {
                    const bool same_basis = *prov_i.basis_index == *prov_j.basis_index;
                    const bool same_rank = li == lj;
                    cls = same_basis ? (same_rank ? 0 : 1) : (same_rank ? 2 : 3);
                }
                ++loc.classes[cls].pairs;
                loc.classes[cls].max_inner = std::max(loc.classes[cls].max_inner, v);
            }
        }
    };
    if (workers == 1) {
        scan(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back(scan, w);
        }
        for (auto& t : threads) {
            t.join();
        }
    }

    CoherenceReport rep;
    rep.mu_embedded = -std::numeric_limits<double>::infinity();
    rep.min_inner = std::numeric_limits<double>::infinity();
    std::vector<double> row_max(n, -std::numeric_limits<double>::infinity());
    double raw = -std::numeric_limits<double>::infinity();
    PairClassSummary* targets[5] = {&rep.same_basis_same_rank, &rep.same_basis_cross_rank,
                                    &rep.cross_basis_same_rank, &rep.cross_basis_cross_rank, &rep.unclassified};
    bool have = false;
    for (const Local& loc : locals) {
        if (loc.best > rep.mu_embedded || (loc.best == rep.mu_embedded && have && before(loc.argmax, rep.argmax))) {
            rep.mu_embedded = loc.best;
            rep.argmax = loc.argmax;
            have = true;
        }
        rep.min_inner = std::min(rep.min_inner, loc.worst);
        for (std::size_t i = 0; i < n; ++i) {
            row_max[i] = std::max(row_max[i], loc.row_max[i]);
        }
        for (std::size_t c = 0; c < 5; ++c) {
            merge_class(*targets[c], loc.classes[c]);
        }
        raw = std::max(raw, loc.raw);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (row_max[i] >= rep.mu_embedded - tol.eps_abs) {
            rep.achievers.push_back(i);
        }
    }
    if (constant_rank) {
        rep.raw_coherence = raw;
    }
    return rep;
}

TightnessReport check_tightness(const Packing& pk, const Tolerance& tol)
{
    const std::size_t m = pk.m();
    Matrix f(m, m);
    for (const Projection& p : pk.elements()) {
        f += p.matrix();
    }
    TightnessReport rep;
    rep.constant = f.trace().real() / static_cast<double>(m);
    rep.deviation = (f - Matrix::identity(m) * Complex(rep.constant)).max_abs();
    rep.is_tight = rep.deviation <= tol.eps_abs;
    return rep;
}

Packing spatial_complement(const Packing& pk)
{
    std::vector<Projection> out;
    out.reserve(pk.size());
    for (std::size_t i = 0; i < pk.size(); ++i) {
        const Projection& p = pk.element(i);
        if (p.rank() == pk.m()) {
            fail(ErrorKind::Degenerate, "element " + std::to_string(i) + " has full rank; its complement is zero");
        }
        out.push_back(p.complement());
    }
    HypothesisRecord hyp = pk.hypotheses();
    hyp.checks.push_back("spatial complement: embedded vectors negate, pairwise inner products are unchanged");
    return Packing(pk.m(), pk.field(), std::move(out), std::move(hyp));
}

OrthoplexReport verify_orthoplex_geometry(const Packing& pk, const EmbeddingSpace& space, const Tolerance& tol)
{
    OrthoplexReport rep;
    rep.n = pk.size();
    rep.d = space.dimension();
    rep.partner.assign(rep.n, std::nullopt);
    if (space.m() != pk.m()) {
        fail(ErrorKind::Dimension, "embedding space does not match the packing dimension");
    }
    if (rep.n != 2 * rep.d) {
        rep.failures.push_back("n != 2d (n = " + std::to_string(rep.n) + ", 2d = " + std::to_string(2 * rep.d) + ")");
        return rep;
    }
    require_all_embeddable(pk);

    std::vector<EmbeddedVector> code;
    code.reserve(rep.n);
    for (std::size_t i = 0; i < rep.n; ++i) {
        code.push_back(embed(pk.element(i), space, i));
    }
    std::vector<std::size_t> antipode_count(rep.n, 0);
    for (std::size_t i = 0; i < rep.n; ++i) {
        for (std::size_t j = i + 1; j < rep.n; ++j) {
            const double g = euclidean_dot(code[i].coords, code[j].coords);
            if (std::abs(g + 1.0) <= tol.eps_abs) {
                rep.worst_antipodal_deviation = std::max(rep.worst_antipodal_deviation, std::abs(g + 1.0));
                ++antipode_count[i];
                ++antipode_count[j];
                rep.partner[i] = j;
                rep.partner[j] = i;
            } else {
                rep.worst_orthogonal_deviation = std::max(rep.worst_orthogonal_deviation, std::abs(g));
                if (std::abs(g) > tol.eps_abs && rep.failures.size() < 16) {
                    std::ostringstream os;
                    os << "pair (" << i << ", " << j << ") has inner product " << g << ", neither 0 nor -1";
                    rep.failures.push_back(os.str());
                }
            }
        }
    }
    for (std::size_t i = 0; i < rep.n; ++i) {
        if (antipode_count[i] != 1) {
            rep.failures.push_back("element " + std::to_string(i) + " has " + std::to_string(antipode_count[i]) +
                                   " antipodes");
            rep.partner[i] = std::nullopt;
        }
    }
    for (std::size_t i = 0; i < rep.n; ++i) {
        if (!rep.partner[i] || *rep.partner[i] < i) {
            continue;
        }
        const std::size_t j = *rep.partner[i];
        ++rep.antipodal_pairs;
        const Projection& pi = pk.element(i);
        const Projection& pj = pk.element(j);
        const double tr = hermitian_trace_product(pi.matrix(), pj.matrix());
        if (tr > tol.eps_abs || pi.rank() + pj.rank() != pk.m()) {
            rep.failures.push_back("antipodal pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                   ") is not a complementary pair of subspaces");
        }
    }
    if (rep.antipodal_pairs != rep.d) {
        rep.failures.push_back("found " + std::to_string(rep.antipodal_pairs) + " antipodal pairs, expected d = " +
                               std::to_string(rep.d));
    }
    rep.passed = rep.failures.empty();
    return rep;
}

const char* to_string(CertificateStatus status)
{
    switch (status) {
    case CertificateStatus::OptimalOrthoplexRegime: return "OptimalOrthoplexRegime";
    case CertificateStatus::OptimalSimplexRegime: return "OptimalSimplexRegime";
    case CertificateStatus::MaximalOrthoplex: return "MaximalOrthoplex";
    case CertificateStatus::NotCertified: return "NotCertified";
    }
    return "NotCertified";
}

CertificateStatus parse_certificate_status(const std::string& s)
{
    for (auto st : {CertificateStatus::OptimalOrthoplexRegime, CertificateStatus::OptimalSimplexRegime,
                    CertificateStatus::MaximalOrthoplex, CertificateStatus::NotCertified}) {
        if (s == to_string(st)) {
            return st;
        }
    }
    fail(ErrorKind::Parameter, "unknown certificate status \"" + s + "\"");
}

Certificate certify(const Packing& pk, const EmbeddingSpace& space, const CoherenceReport& report,
                    const Tolerance& tol)
{
    const HypothesisRecord& hyp = pk.hypotheses();
    if (!hyp.passed) {
        std::string why = "construction hypotheses failed:";
        for (const auto& f : hyp.failures) {
            why += " " + f + ";";
        }
        fail(ErrorKind::Hypothesis, why);
    }
    Certificate cert;
    cert.m = pk.m();
    cert.field = pk.field();
    cert.n = pk.size();
    cert.d = space.dimension();
    cert.rank_profile = pk.rank_profile();
    cert.mu_embedded = report.mu_embedded;
    cert.raw_coherence = report.raw_coherence;

    const double n = static_cast<double>(cert.n);
    const double md = static_cast<double>(cert.m);
    cert.embedded_simplex_bound = -1.0 / (n - 1.0);
    const bool orthoplex_regime = cert.n > cert.d + 1;
    if (orthoplex_regime) {
        cert.embedded_orthoplex_bound = 0.0;
    }
    if (pk.mixture() == 1) {
        const double l = static_cast<double>(pk.rank_profile().front().rank);
        cert.simplex_bound = (n * l * l - md * l) / (md * (n - 1.0));
        if (orthoplex_regime) {
            cert.orthoplex_bound = l * l / md;
        }
    }

    const TightnessReport tight = check_tightness(pk, tol);
    cert.is_tight = tight.is_tight;
    cert.tight_constant = tight.constant;
    cert.tightness_deviation = tight.deviation;

    std::ostringstream os;
    if (orthoplex_regime && cert.mu_embedded <= tol.eps_abs) {
        cert.status = CertificateStatus::OptimalOrthoplexRegime;
        os << "n = " << cert.n << " > d+1 = " << cert.d + 1 << " and mu = " << cert.mu_embedded
           << " meets the orthoplex bound 0";
        cert.details.push_back(os.str());
        if (cert.n == 2 * cert.d) {
            const OrthoplexReport geo = verify_orthoplex_geometry(pk, space, tol);
            if (geo.passed) {
                cert.status = CertificateStatus::MaximalOrthoplex;
                cert.details.push_back("n = 2d and the embedded code is an orthoplex with " +
                                       std::to_string(geo.antipodal_pairs) + " antipodal pairs");
            } else {
                cert.details.push_back("n = 2d but the orthoplex pattern fails: " + geo.failures.front());
            }
        }
    } else if (std::abs(cert.mu_embedded - cert.embedded_simplex_bound) <= tol.eps_abs) {
        cert.status = CertificateStatus::OptimalSimplexRegime;
        os << "mu = " << cert.mu_embedded << " meets the simplex bound -1/(n-1) = " << cert.embedded_simplex_bound;
        cert.details.push_back(os.str());
    } else {
        cert.status = CertificateStatus::NotCertified;
        os << "mu = " << cert.mu_embedded << " meets neither the simplex bound " << cert.embedded_simplex_bound;
        if (orthoplex_regime) {
            os << " nor the orthoplex bound 0";
        } else {
            os << " (n <= d+1, orthoplex bound does not apply)";
        }
        cert.details.push_back(os.str());
    }
    cert.details.push_back(cert.is_tight ? "tight fusion frame" : "not tight");
    return cert;
}

Certificate certify(const Packing& pk, const EmbeddingSpace& space, const Tolerance& tol)
{
    if (!pk.hypotheses().passed) {
        return certify(pk, space, CoherenceReport{}, tol);
    }
    return certify(pk, space, coherence(pk, space, tol), tol);
}

std::vector<Vector> range_basis(const Projection& p, const Tolerance& tol)
{
    const std::size_t m = p.dimension();
    const std::size_t rank = p.rank();
    std::vector<Vector> residual;
    residual.reserve(m);
    for (std::size_t c = 0; c < m; ++c) {
        residual.push_back(p.matrix().column(c));
    }
    std::vector<bool> taken(m, false);
    std::vector<Vector> chosen;
    chosen.reserve(rank);
    for (std::size_t step = 0; step < rank; ++step) {
        std::size_t best = m;
        double best_norm = 0.0;
        for (std::size_t c = 0; c < m; ++c) {
            if (taken[c]) {
                continue;
            }
            const double nrm = norm(residual[c]);
            if (nrm > best_norm) {
                best_norm = nrm;
                best = c;
            }
        }
        if (best == m || best_norm < tol.eps_abs) {
            fail(ErrorKind::RankDeficiency, "projection columns span less than its rank");
        }
        taken[best] = true;
        chosen.push_back(p.matrix().column(best));
        Vector u = residual[best];
        for (Complex& z : u) {
            z /= best_norm;
        }
        for (std::size_t c = 0; c < m; ++c) {
            if (taken[c]) {
                continue;
            }
            const Complex coeff = dot(u, residual[c]);
            for (std::size_t r = 0; r < m; ++r) {
                residual[c][r] -= coeff * u[r];
            }
        }
    }
    return gram_schmidt(chosen, tol);
}

AchieverSpan span_of_achievers(const Packing& pk, const CoherenceReport& report, CertificateStatus status,
                               const Tolerance& tol)
{
    if (pk.size() < pk.m()) {
        fail(ErrorKind::Parameter, "span_of_achievers requires n >= m");
    }
    std::vector<Vector> columns;
    for (std::size_t idx : report.achievers) {
        auto basis = range_basis(pk.element(idx), tol);
        for (auto& v : basis) {
            columns.push_back(std::move(v));
        }
    }
    AchieverSpan span;
    if (!columns.empty()) {
        span.dimension = matrix_rank(Matrix::from_columns(columns), tol);
    }
    span.is_full = span.dimension == pk.m();
    if (is_certified(status) && !span.is_full) {
        fail(ErrorKind::Internal, "certified packing whose achievers span only " + std::to_string(span.dimension) +
                                      " of " + std::to_string(pk.m()) + " dimensions");
    }
    return span;
}

std::vector<Block> blocks_for_basis(const Packing& pk, std::size_t k)
{
    std::vector<Block> out;
    for (const Projection& p : pk.elements()) {
        const Provenance& prov = p.provenance();
        if (!prov.basis_index || *prov.basis_index != k || !prov.block) {
            continue;
        }
        if (!prov.complemented) {
            out.push_back(*prov.block);
            continue;
        }
        Block c;
        for (std::size_t pt = 0; pt < pk.m(); ++pt) {
            if (!std::binary_search(prov.block->begin(), prov.block->end(), pt)) {
                c.push_back(pt);
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

HadamardMatrix extract_hadamard(const Packing& pk, const BlockDesign& s, const EmbeddingSpace& space,
                                const Tolerance& tol)
{
    const std::size_t m = pk.m();
    if (pk.mixture() != 1) {
        fail(ErrorKind::Structural, "extract_hadamard needs a constant-rank packing; this one has mixture " +
                                        std::to_string(pk.mixture()));
    }
    const std::size_t l = pk.rank_profile().front().rank;
    if (2 * l != m) {
        fail(ErrorKind::Structural, "each projection must have rank m/2 = " + std::to_string(m / 2) + ", found " +
                                        std::to_string(l));
    }
    const OrthoplexReport geo = verify_orthoplex_geometry(pk, space, tol);
    if (!geo.passed) {
        fail(ErrorKind::Structural, "packing is not a maximal orthoplectic fusion frame: " + geo.failures.front());
    }
    if (s.point_count() != m || s.block_size() != l) {
        fail(ErrorKind::Structural, "design does not match the packing's dimension and rank");
    }
    if (s.block_count() != 2 * (m - 1)) {
        fail(ErrorKind::Structural, "design must have 2(m-1) = " + std::to_string(2 * (m - 1)) + " blocks");
    }

    const BlockDesign sc = complement_design(s);
    std::vector<bool> paired(s.block_count(), false);
    std::vector<Block> rows;
    for (std::size_t i = 0; i < s.block_count(); ++i) {
        if (paired[i]) {
            continue;
        }
        std::size_t j = i + 1;
        while (j < s.block_count() && (paired[j] || s.block(j) != sc.block(i))) {
            ++j;
        }
        if (j == s.block_count()) {
            fail(ErrorKind::Structural, "block " + std::to_string(i) + " has no complement in the design");
        }
        paired[i] = paired[j] = true;
        rows.push_back(s.block(i).front() == 0 ? s.block(i) : s.block(j));
    }

    std::vector<int> e(m * m, -1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t pt : rows[r]) {
            e[r * m + pt] = 1;
        }
    }
    for (std::size_t c = 0; c < m; ++c) {
        e[(m - 1) * m + c] = 1;
    }
    std::optional<HadamardMatrix> h;
    try {
        h.emplace(m, std::move(e));
    } catch (const Error& err) {
        fail(ErrorKind::Internal, std::string("extracted matrix is not Hadamard: ") + err.what());
    }

    std::vector<Block> original = s.blocks();
    std::vector<Block> recovered = hadamard_to_3design(*h).blocks();
    std::sort(original.begin(), original.end());
    std::sort(recovered.begin(), recovered.end());
    if (original != recovered) {
        fail(ErrorKind::Internal, "Hadamard 3-design of the extracted matrix differs from the input design");
    }
    return *h;
}

} // namespace fusionpack
