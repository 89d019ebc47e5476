#pragma once

#include "fusionpack/designs.hpp"
#include "fusionpack/embedding.hpp"
#include "fusionpack/mubs.hpp"
#include "fusionpack/packing.hpp"

#include <json.hpp>

#include <filesystem>

namespace fusionpack {

using Json = nlohmann::json;

// Every decoder raises a parameter error naming the offending field on
// malformed input.

Json matrix_to_json(const Matrix& a, Field field);
Matrix matrix_from_json(const Json& j, Field field);

Json mubs_to_json(const MubFamily& family);
MubFamily mubs_from_json(const Json& j);

Json design_to_json(const BlockDesign& d);
BlockDesign design_from_json(const Json& j);

Json hadamard_to_json(const HadamardMatrix& h);
HadamardMatrix hadamard_from_json(const Json& j);

Json provenance_to_json(const Provenance& p);
Provenance provenance_from_json(const Json& j);

Json hypotheses_to_json(const HypothesisRecord& h);
HypothesisRecord hypotheses_from_json(const Json& j);

Json packing_to_json(const Packing& pk);
/// Elements are re-validated with is_projection; a failure names the element
/// and the violated condition.
Packing packing_from_json(const Json& j, const Tolerance& tol);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json embedded_code_to_json(std::size_t d, const std::vector<EmbeddedVector>& code);

Json read_json_file(const std::filesystem::path& path);
/// Two-space indented dump with a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);
std::string dump(const Json& j);

} // namespace fusionpack
