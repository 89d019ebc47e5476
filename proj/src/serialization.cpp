#include "fusionpack/serialization.hpp"

#include "fusionpack/error.hpp"

#include <fstream>
#include <sstream>

namespace fusionpack {

namespace {

const Json& field_of(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        fail(ErrorKind::Parameter, std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

template <typename T>
T get_as(const Json& j, const char* key)
{
    try {
        return field_of(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Parameter, std::string("field \"") + key + "\" has the wrong type: " + e.what());
    }
}

template <typename T>
std::optional<T> get_optional(const Json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    return get_as<T>(j, key);
}

} // namespace

Json matrix_to_json(const Matrix& a, Field field)
{
    std::vector<double> re;
    std::vector<double> im;
    re.reserve(a.entries().size());
    for (const Complex& z : a.entries()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    Json j = {{"rows", a.rows()}, {"cols", a.cols()}, {"re", re}};
    if (field == Field::Complex) {
        j["im"] = im;
    }
    return j;
}

Matrix matrix_from_json(const Json& j, Field field)
{
    const auto rows = get_as<std::size_t>(j, "rows");
    const auto cols = get_as<std::size_t>(j, "cols");
    const auto re = get_as<std::vector<double>>(j, "re");
    std::vector<double> im;
    if (j.contains("im")) {
        im = get_as<std::vector<double>>(j, "im");
    } else if (field == Field::Complex) {
        im.assign(re.size(), 0.0);
    }
    if (re.size() != rows * cols || (!im.empty() && im.size() != re.size())) {
        fail(ErrorKind::Parameter, "matrix entry count does not match rows x cols");
    }
    std::vector<Complex> entries(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
        entries[i] = Complex(re[i], im.empty() ? 0.0 : im[i]);
    }
    return Matrix(rows, cols, std::move(entries));
}

Json mubs_to_json(const MubFamily& family)
{
    Json bases = Json::array();
    for (const Basis& b : family.bases) {
        bases.push_back(matrix_to_json(b.vectors(), family.field));
    }
    return {{"m", family.m}, {"field", field_symbol(family.field)}, {"bases", bases}};
}

MubFamily mubs_from_json(const Json& j)
{
    MubFamily f;
    f.m = get_as<std::size_t>(j, "m");
    f.field = parse_field(get_as<std::string>(j, "field"));
    const Json& bases = field_of(j, "bases");
    if (!bases.is_array()) {
        fail(ErrorKind::Parameter, "field \"bases\" must be an array");
    }
    for (const Json& b : bases) {
        Matrix mat = matrix_from_json(b, f.field);
        if (mat.rows() != f.m) {
            fail(ErrorKind::Dimension, "basis dimension does not match m");
        }
        f.bases.emplace_back(f.field, std::move(mat));
    }
    return f;
}

Json design_to_json(const BlockDesign& d)
{
    Json j = {{"m", d.point_count()}, {"blocks", d.blocks()}};
    if (d.declared_t()) {
        j["t"] = *d.declared_t();
    }
    if (d.declared_lambda()) {
        j["lambda"] = *d.declared_lambda();
    }
    return j;
}

BlockDesign design_from_json(const Json& j)
{
    return BlockDesign(get_as<std::size_t>(j, "m"), get_as<std::vector<Block>>(j, "blocks"),
                       get_optional<std::size_t>(j, "t"), get_optional<std::size_t>(j, "lambda"));
}

Json hadamard_to_json(const HadamardMatrix& h)
{
    Json rows = Json::array();
    for (std::size_t r = 0; r < h.order(); ++r) {
        std::vector<int> row(h.entries().begin() + static_cast<std::ptrdiff_t>(r * h.order()),
                             h.entries().begin() + static_cast<std::ptrdiff_t>((r + 1) * h.order()));
        rows.push_back(row);
    }
    return {{"order", h.order()}, {"rows", rows}};
}

HadamardMatrix hadamard_from_json(const Json& j)
{
    const auto order = get_as<std::size_t>(j, "order");
    const auto rows = get_as<std::vector<std::vector<int>>>(j, "rows");
    if (rows.size() != order) {
        fail(ErrorKind::Parameter, "Hadamard row count does not match order");
    }
    std::vector<int> entries;
    for (const auto& row : rows) {
        if (row.size() != order) {
            fail(ErrorKind::Parameter, "Hadamard row length does not match order");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return HadamardMatrix(order, std::move(entries));
}

Json provenance_to_json(const Provenance& p)
{
    Json j = Json::object();
    if (p.group) {
        j["group"] = *p.group;
    }
    if (p.basis_index) {
        j["basis"] = *p.basis_index;
    }
    if (p.block) {
        j["block"] = *p.block;
    }
    j["complemented"] = p.complemented;
    return j;
}

Provenance provenance_from_json(const Json& j)
{
    if (!j.is_object()) {
        fail(ErrorKind::Parameter, "provenance entry must be an object");
    }
    Provenance p;
    p.group = get_optional<std::size_t>(j, "group");
    p.basis_index = get_optional<std::size_t>(j, "basis");
    p.block = get_optional<Block>(j, "block");
    p.complemented = j.contains("complemented") ? get_as<bool>(j, "complemented") : false;
    return p;
}

Json hypotheses_to_json(const HypothesisRecord& h)
{
    return {{"construction", h.construction},
            {"passed", h.passed},
            {"checks", h.checks},
            {"failures", h.failures},
            {"candidate_maximal", h.candidate_maximal}};
}

HypothesisRecord hypotheses_from_json(const Json& j)
{
    HypothesisRecord h;
    h.construction = get_as<std::string>(j, "construction");
    h.passed = get_as<bool>(j, "passed");
    h.checks = get_as<std::vector<std::string>>(j, "checks");
    h.failures = get_as<std::vector<std::string>>(j, "failures");
    h.candidate_maximal = get_as<bool>(j, "candidate_maximal");
    return h;
}

Json packing_to_json(const Packing& pk)
{
    Json elements = Json::array();
    Json provenance = Json::array();
    for (const Projection& p : pk.elements()) {
        elements.push_back(matrix_to_json(p.matrix(), pk.field()));
        provenance.push_back(provenance_to_json(p.provenance()));
    }
    return {{"m", pk.m()},
            {"field", field_symbol(pk.field())},
            {"elements", elements},
            {"provenance", provenance},
            {"hypotheses", hypotheses_to_json(pk.hypotheses())}};
}

Packing packing_from_json(const Json& j, const Tolerance& tol)
{
    const auto m = get_as<std::size_t>(j, "m");
    const Field field = parse_field(get_as<std::string>(j, "field"));
    const Json& elements = field_of(j, "elements");
    if (!elements.is_array()) {
        fail(ErrorKind::Parameter, "field \"elements\" must be an array");
    }
    std::vector<Provenance> prov(elements.size());
    if (j.contains("provenance")) {
        const Json& pj = j.at("provenance");
        if (!pj.is_array() || pj.size() != elements.size()) {
            fail(ErrorKind::Parameter, "provenance must list one entry per element");
        }
        for (std::size_t i = 0; i < pj.size(); ++i) {
            prov[i] = provenance_from_json(pj[i]);
        }
    }
    std::vector<Projection> out;
    out.reserve(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i) {
        Matrix mat = matrix_from_json(elements[i], field);
        if (mat.rows() != m || mat.cols() != m) {
            fail(ErrorKind::Dimension, "element " + std::to_string(i) + " is not " + std::to_string(m) + "x" +
                                           std::to_string(m));
        }
        try {
            out.push_back(Projection::from_matrix(std::move(mat), tol, prov[i]));
        } catch (const Error& e) {
            fail(ErrorKind::Parameter, "element " + std::to_string(i) + ": " + e.what());
        }
    }
    HypothesisRecord hyp;
    if (j.contains("hypotheses")) {
        hyp = hypotheses_from_json(j.at("hypotheses"));
    }
    return Packing(m, field, std::move(out), std::move(hyp));
}

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

} // namespace

Json certificate_to_json(const Certificate& c)
{
    Json profile = Json::array();
    for (const RankClass& rc : c.rank_profile) {
        profile.push_back({{"count", rc.count}, {"rank", rc.rank}});
    }
    return {{"status", to_string(c.status)},
            {"m", c.m},
            {"field", field_symbol(c.field)},
            {"n", c.n},
            {"d", c.d},
            {"rank_profile", profile},
            {"mu_embedded", c.mu_embedded},
            {"embedded_simplex_bound", c.embedded_simplex_bound},
            {"embedded_orthoplex_bound", optional_number(c.embedded_orthoplex_bound)},
            {"raw_coherence", optional_number(c.raw_coherence)},
            {"simplex_bound", optional_number(c.simplex_bound)},
            {"orthoplex_bound", optional_number(c.orthoplex_bound)},
            {"is_tight", c.is_tight},
            {"tight_constant", c.tight_constant},
            {"tightness_deviation", c.tightness_deviation},
            {"details", c.details}};
}

Certificate certificate_from_json(const Json& j)
{
    Certificate c;
    c.status = parse_certificate_status(get_as<std::string>(j, "status"));
    c.m = get_as<std::size_t>(j, "m");
    c.field = parse_field(get_as<std::string>(j, "field"));
    c.n = get_as<std::size_t>(j, "n");
    c.d = get_as<std::size_t>(j, "d");
    for (const Json& rc : field_of(j, "rank_profile")) {
        c.rank_profile.push_back({get_as<std::size_t>(rc, "count"), get_as<std::size_t>(rc, "rank")});
    }
    c.mu_embedded = get_as<double>(j, "mu_embedded");
    c.embedded_simplex_bound = get_as<double>(j, "embedded_simplex_bound");
    c.embedded_orthoplex_bound = get_optional<double>(j, "embedded_orthoplex_bound");
    c.raw_coherence = get_optional<double>(j, "raw_coherence");
    c.simplex_bound = get_optional<double>(j, "simplex_bound");
    c.orthoplex_bound = get_optional<double>(j, "orthoplex_bound");
    c.is_tight = get_as<bool>(j, "is_tight");
    c.tight_constant = get_as<double>(j, "tight_constant");
    c.tightness_deviation = get_as<double>(j, "tightness_deviation");
    c.details = get_as<std::vector<std::string>>(j, "details");
    return c;
}

Json embedded_code_to_json(std::size_t d, const std::vector<EmbeddedVector>& code)
{
    Json vectors = Json::array();
    for (const EmbeddedVector& v : code) {
        vectors.push_back({{"coords", v.coords}, {"rank", v.source_rank}});
    }
    return {{"d", d}, {"vectors", vectors}};
}

Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        fail(ErrorKind::Parameter, "cannot open " + path.string());
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Parameter, path.string() + " is not valid JSON: " + e.what());
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::filesystem::path& path, const Json& j)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(ErrorKind::Parameter, "cannot write " + path.string());
    }
    out << dump(j);
}

} // namespace fusionpack
