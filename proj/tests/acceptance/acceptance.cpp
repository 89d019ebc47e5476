// Acceptance suite: one PASS/FAIL line per criterion, runtime budgets
// included. Criterion 8 is informational and never affects the exit code.
//
//   acceptance [--stretch-designs S1.json S2.json]
//
// Without design files the m = 71 stretch case runs on the quadratic-residue
// design (71,35,17) and its complement, and says so.

#include "fixtures.hpp"

#include "fusionpack/error.hpp"
#include "fusionpack/packing.hpp"
#include "fusionpack/serialization.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace fusionpack;

namespace {

struct Outcome {
    bool passed = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            passed = false;
            notes.push_back("FAILED " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

struct Runner {
    int gating_failures = 0;

    void run(int id, const std::string& name, double budget_s, bool gating, const std::function<void(Outcome&)>& body)
    {
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            body(out);
        } catch (const std::exception& e) {
            out.passed = false;
            out.note(std::string("exception: ") + e.what());
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.require(elapsed < budget_s, "runtime " + fmt(elapsed) + " s >= " + fmt(budget_s) + " s");
        if (!out.passed && gating) {
            ++gating_failures;
        }
        std::printf("%s [%d] %s%s (%.2f s / %.0f s)\n", out.passed ? "PASS" : "FAIL", id, name.c_str(),
                    gating ? "" : " [non-gating]", elapsed, budget_s);
        for (const auto& n : out.notes) {
            std::printf("       %s\n", n.c_str());
        }
        std::fflush(stdout);
    }
};

const Tolerance kTol;

BlockDesign hadamard_half(const BlockDesign& full, std::size_t order)
{
    std::vector<Block> head(full.blocks().begin(), full.blocks().begin() + static_cast<std::ptrdiff_t>(order - 1));
    return BlockDesign(order, head);
}

Matrix random_unitary(std::size_t m, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    std::vector<Vector> cols(m, Vector(m));
    for (auto& c : cols) {
        for (auto& z : c) {
            z = Complex(g(rng), g(rng));
        }
    }
    return Matrix::from_columns(gram_schmidt(cols, kTol));
}

Packing conjugated(const Packing& pk, const Matrix& u)
{
    std::vector<Projection> el;
    for (const Projection& p : pk.elements()) {
        el.push_back(Projection::from_matrix(u * p.matrix() * u.adjoint(), kTol));
    }
    return Packing(pk.m(), pk.field(), el);
}

// Criterion 1.
void embedding_identities(Outcome& out)
{
    std::mt19937_64 rng(20240601);
    double worst_trace = 0.0;
    double worst_radius = 0.0;
    double worst_antipode = 0.0;
    std::size_t pairs = 0;
    for (Field f : {Field::Real, Field::Complex}) {
        for (std::size_t m = 2; m <= 8; ++m) {
            const EmbeddingSpace space = build_space(m, f);
            std::vector<std::pair<std::size_t, std::size_t>> combos;
            for (std::size_t a = 1; a < m; ++a) {
                for (std::size_t b = 1; b < m; ++b) {
                    combos.emplace_back(a, b);
                }
            }
            for (std::size_t t = 0; t < 500; ++t) {
                const auto [lp, lq] = combos[t % combos.size()];
                const Projection p = random_projection(m, lp, f, rng);
                const Projection q = random_projection(m, lq, f, rng);
                const auto vp = embed(p, space).coords;
                const auto vq = embed(q, space).coords;
                const double tr = hermitian_trace_product(p.matrix(), q.matrix());
                worst_trace = std::max(worst_trace, std::abs(embedded_inner_from_trace(tr, m, lp, lq) -
                                                             euclidean_dot(vp, vq)));
                Matrix shifted = p.matrix();
                for (std::size_t i = 0; i < m; ++i) {
                    shifted(i, i) -= static_cast<double>(lp) / static_cast<double>(m);
                }
                worst_radius = std::max(worst_radius, std::abs(hs_inner(shifted, shifted).real() - squared_radius(m, lp)));
                const auto vc = embed(p.complement(), space).coords;
                for (std::size_t i = 0; i < vp.size(); ++i) {
                    worst_antipode = std::max(worst_antipode, std::abs(vp[i] + vc[i]));
                }
                ++pairs;
            }
        }
    }
    out.note(std::to_string(pairs) + " pairs; trace identity " + fmt(worst_trace) + ", radius " + fmt(worst_radius) +
             ", antipodality " + fmt(worst_antipode));
    out.require(worst_trace <= 1e-9, "trace identity within 1e-9");
    out.require(worst_radius <= 1e-9, "radius within 1e-9");
    out.require(worst_antipode <= 1e-12, "antipodality within 1e-12");
}

// Criterion 2.
void octahedron(Outcome& out)
{
    const Packing pk = build_orthoplex_packing(gen_mubs_small(2, Field::Complex), BlockDesign(2, {{0}}));
    const EmbeddingSpace space = build_space(2, Field::Complex);
    const OrthoplexReport geo = verify_orthoplex_geometry(pk, space, kTol);
    const CoherenceReport rep = coherence(pk, space, kTol);
    out.note("n = " + std::to_string(pk.size()) + ", 2d = " + std::to_string(2 * space.dimension()) +
             ", mu = " + fmt(rep.mu_embedded));
    out.require(pk.size() == 6 && space.dimension() == 3, "n = 6 = 2d");
    out.require(geo.passed, "orthoplex geometry");
    out.require(std::abs(rep.mu_embedded) <= 1e-9, "mu_embedded = 0");
}

// Criterion 3.
void c4_maximal(Outcome& out)
{
    const BlockDesign full = hadamard_to_3design(gen_hadamard(4));
    out.require(full.block_count() == 6 && full.block_size() == 2, "6 blocks of size 2");
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = i + 1; j < 6; ++j) {
            const std::size_t common = intersection_size(full.block(i), full.block(j));
            if (j != i + 3 && 4 * common != 2 * 2) {
                ++wrong;
            }
        }
    }
    out.require(wrong == 0, "non-complementary intersections equal l^2/m = 1");

    const Packing pk = build_orthoplex_packing(gen_mubs_small(4, Field::Complex), hadamard_half(full, 4));
    const EmbeddingSpace space = build_space(4, Field::Complex);
    const CoherenceReport rep = coherence(pk, space, kTol);
    const Certificate cert = certify(pk, space, rep, kTol);
    out.note("n = " + std::to_string(cert.n) + ", status " + to_string(cert.status) + ", frame constant " +
             fmt(cert.tight_constant) + ", deviation " + fmt(cert.tightness_deviation));
    out.require(pk.size() == 30, "30 projections");
    out.require(cert.status == CertificateStatus::MaximalOrthoplex, "MaximalOrthoplex");
    out.require(cert.is_tight && std::abs(cert.tight_constant - 15.0) <= 1e-9 && cert.tightness_deviation <= 1e-9,
                "tight with constant 15");

    const HadamardMatrix h = extract_hadamard(pk, BlockDesign(4, blocks_for_basis(pk, 0)), space, kTol);
    bool exact = h.order() == 4;
    for (std::size_t i = 0; i < 4 && exact; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            int s = 0;
            for (std::size_t k = 0; k < 4; ++k) {
                s += h(i, k) * h(j, k);
            }
            exact = exact && s == (i == j ? 4 : 0);
        }
    }
    out.require(exact, "H H^T = 4I");
}

// Criterion 4.
void fano_mixed(Outcome& out)
{
    const BlockDesign s = fixtures::fano();
    const MubFamily mubs = gen_mubs(7, Field::Complex);
    const Packing pk = build_mixed_packing(mubs, {s, complement_design(s)}, {{0, 1, 2, 3}, {4, 5, 6, 7}});
    const EmbeddingSpace space = build_space(7, Field::Complex);
    const CoherenceReport rep = coherence(pk, space, kTol);
    const Certificate cert = certify(pk, space, rep, kTol);
    const AchieverSpan span = span_of_achievers(pk, rep, cert.status, kTol);
    const CoherenceReport comp = coherence(spatial_complement(pk), space, kTol);
    out.note("n = " + std::to_string(cert.n) + " > " + std::to_string(cert.d + 1) + " = d+1, mu = " +
             fmt(rep.mu_embedded) + ", constant " + fmt(cert.tight_constant) + ", span " +
             std::to_string(span.dimension) + ", complement mu difference " +
             fmt(std::abs(comp.mu_embedded - rep.mu_embedded)));
    out.require(mubs.size() == 8, "8 MUBs");
    out.require(pk.size() == 56 && cert.d + 1 == 49, "56 > 49");
    out.require(std::abs(rep.mu_embedded) <= 1e-9, "mu_embedded = 0");
    out.require(cert.status == CertificateStatus::OptimalOrthoplexRegime, "OptimalOrthoplexRegime");
    out.require(cert.is_tight && std::abs(cert.tight_constant - 28.0) <= 1e-9, "tight with constant 28");
    out.require(span.dimension == 7, "achiever span 7");
    out.require(std::abs(comp.mu_embedded - rep.mu_embedded) <= 1e-12, "complement mu unchanged");
}

bool counting_identities(const DesignReport& rep)
{
    if (!rep.r_observed) {
        return false;
    }
    bool ok = rep.m * *rep.r_observed == rep.b * rep.l;
    if (rep.t >= 2 && rep.lambda_per_level.size() >= 2 && rep.lambda_per_level[1]) {
        ok = ok && *rep.r_observed * (rep.l - 1) == *rep.lambda_per_level[1] * (rep.m - 1);
    }
    return ok;
}

// Criterion 5.
void design_suite(Outcome& out)
{
    const BlockDesign fano(7, enumerate_projective_plane(PrimePower::make(2, 1)), 2, 1);
    const DesignReport f = verify_design(fano, 2);
    out.require(f.is_design() && f.lambda_observed == 1 && f.r_observed == 3 && f.b == 7 && f.is_symmetric &&
                    f.cohesion == 1,
                "Fano (lambda 1, r 3, b 7, symmetric, cohesion 1)");

    const BlockDesign ag22 = BlockDesign::from_point_sets(4, enumerate_affine_hyperplanes(2, 2));
    const DesignReport a = verify_design(ag22, 2);
    out.require(a.is_design() && a.resolution.is_resolvable && a.resolution.is_affine && a.b == 6 &&
                    a.r_observed && a.b == a.m + *a.r_observed - 1 && a.resolution.bose_equality,
                "AG(2,2) resolvable, affine, b = m + r - 1");

    const BlockDesign h4 = hadamard_to_3design(gen_hadamard(4));
    const DesignReport h = verify_design(h4, 3);
    out.require(h.is_t_design == std::vector<bool>{true, true, true} && h.lambda_per_level[2] == 0 && h.l == 2 &&
                    h.m == 4,
                "H4 3-(4,2,0) with its 2- and 1-design reductions");

    const BlockDesign comp = complement_design(fano);
    const DesignReport c = verify_design(comp, 2);
    out.require(c.is_design() && c.l == 4 && c.lambda_observed == 2 && c.is_symmetric, "complement is (7,4,2)");

    std::vector<DesignReport> all = {f, a, h, c};
    all.push_back(verify_design(BlockDesign::from_point_sets(9, enumerate_affine_hyperplanes(3, 2)), 2));
    all.push_back(verify_design(BlockDesign::from_point_sets(27, enumerate_affine_hyperplanes(3, 3)), 2));
    all.push_back(verify_design(BlockDesign(13, enumerate_projective_plane(PrimePower::make(3, 1))), 2));
    all.push_back(verify_design(BlockDesign(21, enumerate_projective_plane(PrimePower::make(2, 2))), 2));
    for (std::size_t order : {8u, 12u, 16u}) {
        all.push_back(verify_design(hadamard_to_3design(gen_hadamard(order)), 3));
    }
    std::size_t bad = 0;
    for (const auto& r : all) {
        bad += !counting_identities(r);
    }
    out.note(std::to_string(all.size()) + " generated designs checked for mr = bl and r(l-1) = lambda(m-1)");
    out.require(bad == 0, "counting identities");
}

// Criterion 6.
void mub_suite(Outcome& out)
{
    double worst = 0.0;
    bool cardinality = true;
    bool passed = true;
    auto check = [&](const MubFamily& fam, std::size_t expected) {
        const MubReport rep = verify_mubs(fam, kTol);
        passed = passed && rep.passed;
        cardinality = cardinality && fam.size() == expected;
        worst = std::max(worst, rep.worst_deviation());
    };
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        check(gen_mubs_prime(p), p + 1);
    }
    check(gen_mubs_prime_power(PrimePower::make(3, 2)), 10);
    check(gen_mubs_prime_power(PrimePower::make(5, 2)), 26);
    check(gen_mubs_small(4, Field::Real), 3);
    out.note("worst deviation " + fmt(worst));
    out.require(passed, "verify_mubs");
    out.require(worst < 1e-9, "worst deviation < 1e-9");
    out.require(cardinality, "cardinality m+1 (complex), 3 = m/2+1 for R^4");
}

// Criterion 7.
void rebasing(Outcome& out)
{
    const RebasedDesign f = design_rebase(fixtures::fano());
    const RebasedDesign pg = design_rebase(BlockDesign(13, enumerate_projective_plane(PrimePower::make(3, 1)), 2, 1));
    out.require(f.m_prime == 9 && 1 * f.m_prime == 3 * 3, "Fano: m' = 9, lambda m' = l^2");
    out.require(pg.m_prime == 16 && 1 * pg.m_prime == 4 * 4, "PG(2,3): m' = 16, lambda m' = l^2");

    const Packing pk = build_orthoplex_packing(gen_mubs(9, Field::Complex), f.design);
    const EmbeddingSpace space = build_space(9, Field::Complex);
    const Certificate cert = certify(pk, space, kTol);
    const OrthoplexReport geo = verify_orthoplex_geometry(pk, space, kTol);
    out.note("n = " + std::to_string(pk.size()) + " > " + std::to_string(space.dimension() + 1) +
             " = d+1; geometry: " + (geo.failures.empty() ? std::string("passed") : geo.failures.front()));
    out.require(pk.size() == 140 && pk.size() > space.dimension() + 1, "140 > d+1");
    out.require(cert.status == CertificateStatus::OptimalOrthoplexRegime, "OptimalOrthoplexRegime");
    out.require(!geo.passed && geo.n == 140 && geo.d * 2 == 160 && !geo.failures.empty() &&
                    geo.failures.front().find("n != 2d") != std::string::npos,
                "geometry reports n != 2d (140 < 160)");
}

// Criterion 8.
void stretch71(Outcome& out, const std::vector<std::string>& design_files)
{
    std::vector<BlockDesign> designs;
    if (design_files.size() == 2) {
        for (const auto& file : design_files) {
            designs.push_back(design_from_json(read_json_file(file)));
        }
        out.note("designs from " + design_files[0] + ", " + design_files[1]);
    } else {
        const BlockDesign qr = fixtures::quadratic_residue_design(71);
        designs = {qr, complement_design(qr)};
        out.note("SUBSTITUTE: no (71,15,3)/(71,21,6) input files; using the symmetric (71,35,17) residue design "
                 "and its (71,36,18) complement");
    }
    std::vector<std::size_t> first(36);
    std::vector<std::size_t> second(36);
    std::iota(first.begin(), first.end(), 0);
    std::iota(second.begin(), second.end(), 36);
    const MubFamily mubs = gen_mubs_prime(71);
    const Packing pk = build_mixed_packing(mubs, designs, {first, second});
    const EmbeddingSpace space = build_space(71, Field::Complex);
    const CoherenceReport rep = coherence(pk, space, kTol);
    const Certificate cert = certify(pk, space, rep, kTol);
    out.note("n = " + std::to_string(pk.size()) + ", mu = " + fmt(rep.mu_embedded) + ", status " +
             to_string(cert.status) + ", frame deviation " + fmt(cert.tightness_deviation));
    out.require(mubs.size() == 72, "72 MUBs");
    out.require(pk.size() == 5112, "5112 projections");
    out.require(std::abs(rep.mu_embedded) <= 1e-8, "mu_embedded = 0 within 1e-8");
    out.require(cert.is_tight, "tight");
}

// Criterion 9.
void properties(Outcome& out)
{
    std::size_t floor_checks = 0;
    std::size_t involution_checks = 0;
    std::size_t monotone_checks = 0;
    double worst_floor = 1.0;

    auto rankin_floor = [&](const Packing& pk) {
        const EmbeddingSpace space = build_space(pk.m(), pk.field());
        if (pk.size() <= space.dimension() + 1) {
            return;
        }
        const CoherenceReport rep = coherence(pk, space, kTol);
        worst_floor = std::min(worst_floor, rep.mu_embedded);
        out.require(rep.mu_embedded >= -1e-9, "Rankin floor");
        ++floor_checks;
    };
    auto involution = [&](const Packing& pk) {
        const Packing back = spatial_complement(spatial_complement(pk));
        double worst = 0.0;
        for (std::size_t i = 0; i < pk.size(); ++i) {
            worst = std::max(worst, fixtures::max_abs_diff(back.element(i).matrix(), pk.element(i).matrix()));
        }
        out.require(worst <= kTol.eps_tight && back.rank_profile() == pk.rank_profile(), "complement involution");
        ++involution_checks;
    };
    auto monotone = [&](const Packing& pk) {
        const EmbeddingSpace space = build_space(pk.m(), pk.field());
        const CoherenceReport rep = coherence(pk, space, kTol);
        const Certificate cert = certify(pk, space, rep, kTol);
        if (cert.status == CertificateStatus::MaximalOrthoplex || cert.status == CertificateStatus::OptimalOrthoplexRegime) {
            out.require(cert.n > cert.d + 1 && rep.mu_embedded <= kTol.eps_abs, "orthoplex regime conditions");
        }
        if (cert.status == CertificateStatus::MaximalOrthoplex) {
            out.require(cert.n == 2 * cert.d && verify_orthoplex_geometry(pk, space, kTol).passed,
                        "maximal orthoplex conditions");
        }
        ++monotone_checks;
    };

    const BlockDesign s = fixtures::fano();
    const BlockDesign sc = complement_design(s);
    const MubFamily mubs7 = gen_mubs_prime(7);
    const MubFamily mubs4 = gen_mubs_small(4, Field::Complex);
    const Packing c4 = build_orthoplex_packing(mubs4, hadamard_half(hadamard_to_3design(gen_hadamard(4)), 4));
    const Packing c2 = build_orthoplex_packing(gen_mubs_small(2, Field::Complex), BlockDesign(2, {{0}}));

    for (std::uint64_t seed : {11u, 29u, 47u}) {
        std::mt19937_64 rng(seed);

        // Random split of the Fano family over a shuffled basis order.
        std::vector<std::size_t> order(8);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        const std::size_t cut = std::uniform_int_distribution<std::size_t>(1, 7)(rng);
        const Packing fano_pk =
            build_mixed_packing(mubs7, {s, sc}, {{order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cut)},
                                                 {order.begin() + static_cast<std::ptrdiff_t>(cut), order.end()}});

        // Random imported packings above d+1 with mixed ranks.
        std::vector<Projection> el;
        for (std::size_t i = 0; i < 12; ++i) {
            el.push_back(random_projection(3, 1 + i % 2, Field::Complex, rng));
        }
        const Packing random_c3(3, Field::Complex, el);
        el.clear();
        for (std::size_t i = 0; i < 8; ++i) {
            el.push_back(random_projection(3, 1 + i % 2, Field::Real, rng));
        }
        const Packing random_r3(3, Field::Real, el);

        // Unitary images of the maximal examples.
        const Packing c4u = conjugated(c4, random_unitary(4, rng));
        const Packing c2u = conjugated(c2, random_unitary(2, rng));

        for (const Packing* pk : {&fano_pk, &random_c3, &random_r3, &c4u, &c2u}) {
            rankin_floor(*pk);
            involution(*pk);
            monotone(*pk);
        }
        const EmbeddingSpace space4 = build_space(4, Field::Complex);
        out.require(certify(c4u, space4, kTol).status == CertificateStatus::MaximalOrthoplex,
                    "unitary image stays maximal");
    }
    out.note("3 seeds; " + std::to_string(floor_checks) + " floor, " + std::to_string(involution_checks) +
             " involution, " + std::to_string(monotone_checks) + " certification checks; lowest mu " +
             fmt(worst_floor));
}

} // namespace

int main(int argc, char** argv)
{
    std::vector<std::string> stretch_files;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--stretch-designs" && i + 2 < argc) {
            stretch_files = {argv[i + 1], argv[i + 2]};
            i += 2;
        }
    }

    Runner r;
    r.run(1, "embedding identities over m = 2..8, R and C", 10, true, embedding_identities);
    r.run(2, "C^2 octahedron", 1, true, octahedron);
    r.run(3, "C^4 maximal orthoplectic fusion frame", 5, true, c4_maximal);
    r.run(4, "C^7 Fano mixed-rank packing", 10, true, fano_mixed);
    r.run(5, "design suite", 5, true, design_suite);
    r.run(6, "MUB suite", 10, true, mub_suite);
    r.run(7, "rebased designs over C^9", 30, true, rebasing);
    r.run(8, "m = 71 mixed-rank packing", 600, false, [&](Outcome& o) { stretch71(o, stretch_files); });
    r.run(9, "property tests", 60, true, properties);

    std::printf("%s: %d gating criteria failed\n", r.gating_failures == 0 ? "PASS" : "FAIL", r.gating_failures);
    return r.gating_failures == 0 ? 0 : 1;
}
