// fusionpack command-line driver: gen, build, certify, complement, embed.
//
// Exit codes: 0 certified / success, 1 not certified or verification failed,
// 2 input error, 3 hypothesis failure.

#include "fusionpack/designs.hpp"
#include "fusionpack/embedding.hpp"
#include "fusionpack/error.hpp"
#include "fusionpack/mubs.hpp"
#include "fusionpack/packing.hpp"
#include "fusionpack/serialization.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <random>
#include <sstream>

using namespace fusionpack;

namespace {

constexpr int kOk = 0;
constexpr int kNotCertified = 1;
constexpr int kInputError = 2;
constexpr int kHypothesisFailure = 3;

struct Options {
    std::size_t m = 0;
    std::string field = "C";
    double eps = Tolerance{}.eps_abs;
    double eps_tight = Tolerance{}.eps_tight;
    std::uint64_t seed = 1;
    std::string out;

    // gen design
    bool hadamard3 = false;
    bool projective_plane = false;
    bool affine = false;
    std::size_t order = 0;
    std::uint32_t q = 0;
    std::uint32_t p = 0;
    std::uint32_t dim = 2;
    std::string complement_of;
    std::string rebase_of;

    // gen random-packing
    std::vector<std::size_t> ranks;
    std::size_t count = 0;

    // build
    std::string mode = "mixed";
    std::string mubs_file;
    std::vector<std::string> design_files;
    std::string partition;

    // certify, complement, embed
    std::string input;
    bool geometry = false;
    bool achievers = false;
    bool extract = false;
    std::string hadamard_out;

    Tolerance tolerance() const
    {
        Tolerance t{eps, eps_tight};
        t.validate();
        return t;
    }
};

void emit(const Options& opt, const Json& j)
{
    if (opt.out.empty()) {
        std::cout << dump(j);
    } else {
        write_json_file(opt.out, j);
    }
}

std::vector<std::vector<std::size_t>> parse_partition(const std::string& text, std::size_t sets_expected,
                                                      std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    if (text.empty()) {
        // Default: split the bases as evenly as possible among the designs.
        if (sets_expected == 0) {
            return out;
        }
        out.resize(sets_expected);
        for (std::size_t i = 0; i < k; ++i) {
            out[i * sets_expected / k].push_back(i);
        }
        return out;
    }
    std::stringstream sets(text);
    std::string set;
    while (std::getline(sets, set, ';')) {
        std::vector<std::size_t> indices;
        std::stringstream items(set);
        std::string item;
        while (std::getline(items, item, ',')) {
            try {
                std::size_t used = 0;
                const unsigned long v = std::stoul(item, &used);
                if (used != item.size()) {
                    throw std::invalid_argument(item);
                }
                indices.push_back(v);
            } catch (const std::exception&) {
                fail(ErrorKind::Parameter, "partition entry \"" + item + "\" is not an index");
            }
        }
        out.push_back(std::move(indices));
    }
    return out;
}

int cmd_gen_mub(const Options& opt)
{
    const Tolerance tol = opt.tolerance();
    const MubFamily family = gen_mubs(opt.m, parse_field(opt.field));
    const MubReport rep = verify_mubs(family, tol);
    if (!rep.passed) {
        for (const auto& f : rep.failures) {
            std::cerr << "verify_mubs: " << f << "\n";
        }
        return kNotCertified;
    }
    emit(opt, mubs_to_json(family));
    return kOk;
}

BlockDesign generated_design(const Options& opt)
{
    const int selected = int(opt.hadamard3) + int(opt.projective_plane) + int(opt.affine) +
                         int(!opt.complement_of.empty()) + int(!opt.rebase_of.empty());
    if (selected != 1) {
        fail(ErrorKind::Parameter,
             "choose exactly one of --hadamard3, --projective-plane, --affine, --complement, --rebase");
    }
    if (opt.hadamard3) {
        return hadamard_to_3design(gen_hadamard(opt.order));
    }
    if (opt.projective_plane) {
        const PrimePower q = PrimePower::from_order(opt.q);
        const std::size_t points = std::size_t(q.q) * q.q + q.q + 1;
        return BlockDesign(points, enumerate_projective_plane(q), 2, 1);
    }
    if (opt.affine) {
        if (!is_prime(opt.p)) {
            fail(ErrorKind::Parameter, "--p must be prime");
        }
        std::size_t points = 1;
        std::size_t lambda = 0;
        std::size_t pow = 1;
        for (std::uint32_t i = 0; i < opt.dim; ++i) {
            points *= opt.p;
        }
        // Hyperplanes through two points: (p^(dim-1) - 1)/(p - 1).
        for (std::uint32_t i = 0; i + 1 < opt.dim; ++i) {
            lambda += pow;
            pow *= opt.p;
        }
        return BlockDesign(points, enumerate_affine_hyperplanes(opt.p, opt.dim), 2, lambda);
    }
    if (!opt.complement_of.empty()) {
        return complement_design(design_from_json(read_json_file(opt.complement_of)));
    }
    return design_rebase(design_from_json(read_json_file(opt.rebase_of))).design;
}

int cmd_gen_design(const Options& opt)
{
    const BlockDesign d = generated_design(opt);
    if (!opt.rebase_of.empty()) {
        // Rebased blocks no longer cover the new points; what must hold is
        // m' |J n J'| = l^2 for every pair.
        const std::size_t l = d.block_size();
        for (std::size_t i = 0; i < d.block_count(); ++i) {
            for (std::size_t j = i + 1; j < d.block_count(); ++j) {
                if (intersection_size(d.block(i), d.block(j)) * d.point_count() != l * l) {
                    std::cerr << "verify: rebased blocks " << i << " and " << j << " do not meet in l^2/m' points\n";
                    return kNotCertified;
                }
            }
        }
        emit(opt, design_to_json(d));
        return kOk;
    }
    const std::size_t t = d.declared_t().value_or(1);
    const DesignReport rep = verify_design(d, t);
    if (!rep.is_design() || (d.declared_lambda() && rep.lambda_observed != d.declared_lambda())) {
        std::cerr << "verify_design: blocks do not form the declared " << t << "-design\n";
        return kNotCertified;
    }
    emit(opt, design_to_json(d));
    return kOk;
}

int cmd_gen_hadamard(const Options& opt)
{
    emit(opt, hadamard_to_json(gen_hadamard(opt.order)));
    return kOk;
}

int cmd_gen_random_packing(const Options& opt)
{
    if (opt.ranks.empty() || opt.count == 0) {
        fail(ErrorKind::Parameter, "--rank and --count are required");
    }
    const Field field = parse_field(opt.field);
    std::mt19937_64 rng(opt.seed);
    std::vector<Projection> elements;
    for (std::size_t i = 0; i < opt.count; ++i) {
        elements.push_back(random_projection(opt.m, opt.ranks[i % opt.ranks.size()], field, rng));
    }
    HypothesisRecord hyp;
    hyp.construction = "random";
    emit(opt, packing_to_json(Packing(opt.m, field, std::move(elements), std::move(hyp))));
    return kOk;
}

// A complement-closed design (second half = complements of the first half,
// as produced by --hadamard3) is reduced to its first half, since the
// orthoplex construction appends complements itself.
BlockDesign orthoplex_half(const BlockDesign& d)
{
    const std::size_t b = d.block_count();
    if (b % 2 != 0 || d.block_size() * 2 != d.point_count()) {
        return d;
    }
    const std::size_t half = b / 2;
    std::vector<Block> first(d.blocks().begin(), d.blocks().begin() + static_cast<std::ptrdiff_t>(half));
    const BlockDesign head(d.point_count(), first);
    const BlockDesign comp = complement_design(head);
    for (std::size_t i = 0; i < half; ++i) {
        if (comp.block(i) != d.block(half + i)) {
            return d;
        }
    }
    return head;
}

int cmd_build(const Options& opt)
{
    const MubFamily mubs = mubs_from_json(read_json_file(opt.mubs_file));
    std::vector<BlockDesign> designs;
    for (const auto& file : opt.design_files) {
        designs.push_back(design_from_json(read_json_file(file)));
    }
    std::optional<Packing> pk;
    if (opt.mode == "mixed") {
        pk.emplace(build_mixed_packing(mubs, designs, parse_partition(opt.partition, designs.size(), mubs.size())));
    } else if (opt.mode == "orthoplex") {
        if (designs.size() != 1) {
            fail(ErrorKind::Parameter, "orthoplex mode takes exactly one design");
        }
        pk.emplace(build_orthoplex_packing(mubs, orthoplex_half(designs.front())));
    } else {
        fail(ErrorKind::Parameter, "--mode must be mixed or orthoplex");
    }
    emit(opt, packing_to_json(*pk));
    if (!pk->hypotheses().passed) {
        for (const auto& f : pk->hypotheses().failures) {
            std::cerr << "hypothesis " << f << "\n";
        }
        return kHypothesisFailure;
    }
    return kOk;
}

void print_report(const Json& j, const std::string& prefix = "")
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it->is_object()) {
            print_report(*it, key);
        } else {
            std::cout << key << ": " << it->dump() << "\n";
        }
    }
}

int cmd_certify(const Options& opt)
{
    const Tolerance tol = opt.tolerance();
    const Packing pk = packing_from_json(read_json_file(opt.input), tol);
    if (!pk.hypotheses().passed) {
        for (const auto& f : pk.hypotheses().failures) {
            std::cerr << "hypothesis " << f << "\n";
        }
        return kHypothesisFailure;
    }
    const EmbeddingSpace space = build_space(pk.m(), pk.field());
    const CoherenceReport report = coherence(pk, space, tol);
    const Certificate cert = certify(pk, space, report, tol);
    Json out = certificate_to_json(cert);

    if (opt.geometry) {
        const OrthoplexReport geo = verify_orthoplex_geometry(pk, space, tol);
        out["geometry"] = {{"passed", geo.passed},
                           {"antipodal_pairs", geo.antipodal_pairs},
                           {"worst_antipodal_deviation", geo.worst_antipodal_deviation},
                           {"worst_orthogonal_deviation", geo.worst_orthogonal_deviation},
                           {"failures", geo.failures}};
    }
    if (opt.achievers) {
        const AchieverSpan span = span_of_achievers(pk, report, cert.status, tol);
        out["achievers"] = {{"count", report.achievers.size()}, {"span", span.dimension}, {"full", span.is_full}};
    }
    if (opt.extract) {
        const BlockDesign s(pk.m(), blocks_for_basis(pk, 0));
        const HadamardMatrix h = extract_hadamard(pk, s, space, tol);
        const std::string path = opt.hadamard_out.empty() ? opt.out + ".hadamard.json" : opt.hadamard_out;
        if (opt.out.empty() && opt.hadamard_out.empty()) {
            fail(ErrorKind::Parameter, "--extract-hadamard needs --hadamard-out or --out");
        }
        write_json_file(path, hadamard_to_json(h));
        out["hadamard"] = {{"order", h.order()}, {"file", path}};
    }
    if (!opt.out.empty()) {
        write_json_file(opt.out, out);
    }
    print_report(out);
    return is_certified(cert.status) ? kOk : kNotCertified;
}

int cmd_complement(const Options& opt)
{
    const Packing pk = packing_from_json(read_json_file(opt.input), opt.tolerance());
    emit(opt, packing_to_json(spatial_complement(pk)));
    return kOk;
}

int cmd_embed(const Options& opt)
{
    const Packing pk = packing_from_json(read_json_file(opt.input), opt.tolerance());
    const EmbeddingSpace space = build_space(pk.m(), pk.field());
    std::vector<EmbeddedVector> code;
    for (std::size_t i = 0; i < pk.size(); ++i) {
        code.push_back(embed(pk.element(i), space, i));
    }
    emit(opt, embedded_code_to_json(space.dimension(), code));
    return kOk;
}

void add_common(CLI::App* app, Options& opt)
{
    app->add_option("--eps", opt.eps, "absolute tolerance");
    app->add_option("--eps-tight", opt.eps_tight, "tolerance for exact identities");
    app->add_option("--out", opt.out, "output file (stdout when omitted)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Mixed-rank fusion frame packings from MUBs and block designs"};
    app.require_subcommand(1);
    Options opt;

    auto* gen = app.add_subcommand("gen", "generate MUBs, designs, Hadamard matrices or random packings");
    gen->require_subcommand(1);
    auto* gen_mub = gen->add_subcommand("mub", "maximal MUB family");
    gen_mub->add_option("--m", opt.m, "dimension")->required();
    gen_mub->add_option("--field", opt.field, "R or C");
    add_common(gen_mub, opt);

    auto* gen_design = gen->add_subcommand("design", "block design");
    gen_design->add_flag("--hadamard3", opt.hadamard3, "3-design of a generated Hadamard matrix");
    gen_design->add_option("--order", opt.order, "Hadamard order");
    gen_design->add_flag("--projective-plane", opt.projective_plane, "lines of PG(2,q)");
    gen_design->add_option("--q", opt.q, "prime power");
    gen_design->add_flag("--affine", opt.affine, "hyperplanes of AG(dim,p)");
    gen_design->add_option("--p", opt.p, "prime");
    gen_design->add_option("--dim", opt.dim, "affine dimension");
    gen_design->add_option("--complement", opt.complement_of, "complement of a design file");
    gen_design->add_option("--rebase", opt.rebase_of, "rebase a symmetric design file");
    add_common(gen_design, opt);

    auto* gen_had = gen->add_subcommand("hadamard", "Hadamard matrix");
    gen_had->add_option("--order", opt.order, "order")->required();
    add_common(gen_had, opt);

    auto* gen_rand = gen->add_subcommand("random-packing", "random projections (imported provenance)");
    gen_rand->add_option("--m", opt.m, "dimension")->required();
    gen_rand->add_option("--field", opt.field, "R or C");
    gen_rand->add_option("--rank", opt.ranks, "ranks, cycled over the elements")->required();
    gen_rand->add_option("--count", opt.count, "number of elements")->required();
    gen_rand->add_option("--seed", opt.seed, "RNG seed");
    add_common(gen_rand, opt);

    auto* build = app.add_subcommand("build", "build a packing from MUBs and designs");
    build->add_option("--mode", opt.mode, "mixed or orthoplex");
    build->add_option("--mubs", opt.mubs_file, "MUB family file")->required();
    build->add_option("--design", opt.design_files, "design file (repeatable)")->required();
    build->add_option("--partition", opt.partition, "basis index sets per design, e.g. \"0,1,2;3,4\"");
    add_common(build, opt);

    auto* cert = app.add_subcommand("certify", "certify a packing file");
    cert->add_option("packing", opt.input, "packing file")->required();
    cert->add_flag("--geometry", opt.geometry, "verify the orthoplex pattern");
    cert->add_flag("--achievers", opt.achievers, "span of the coherence achievers");
    cert->add_flag("--extract-hadamard", opt.extract, "recover a Hadamard matrix");
    cert->add_option("--hadamard-out", opt.hadamard_out, "Hadamard output file");
    add_common(cert, opt);

    auto* comp = app.add_subcommand("complement", "spatial complement of a packing file");
    comp->add_option("packing", opt.input, "packing file")->required();
    add_common(comp, opt);

    auto* emb = app.add_subcommand("embed", "embedded code of a packing file");
    emb->add_option("packing", opt.input, "packing file")->required();
    add_common(emb, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (gen_mub->parsed()) {
            return cmd_gen_mub(opt);
        }
        if (gen_design->parsed()) {
            return cmd_gen_design(opt);
        }
        if (gen_had->parsed()) {
            return cmd_gen_hadamard(opt);
        }
        if (gen_rand->parsed()) {
            return cmd_gen_random_packing(opt);
        }
        if (build->parsed()) {
            return cmd_build(opt);
        }
        if (cert->parsed()) {
            return cmd_certify(opt);
        }
        if (comp->parsed()) {
            return cmd_complement(opt);
        }
        if (emb->parsed()) {
            return cmd_embed(opt);
        }
    } catch (const Error& e) {
        std::cerr << to_string(e.kind()) << ": " << e.what() << "\n";
        return e.kind() == ErrorKind::Hypothesis ? kHypothesisFailure : kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
