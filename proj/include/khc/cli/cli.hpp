#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "khc/hcclassify/hcclassify.hpp"

namespace khc::cli {

using Json = nlohmann::ordered_json;

/// Runs the command line (without the program name). JSON goes to `out`, structured
/// errors to `err`. Exit codes: 0 ok, 1 usage, 2 falsifier, 3 budget, 4 schema.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Descriptor document:
///   {"group": {"permutations": [[...], ...]} | {"table": [[...], ...]} | {"kleinian": "D5"},
///    "leaves": [{"type": "D5", "monodromy": [[...]], "phi": [...], "lambda": ["1/2", ...]}],
///    "lambda0": ["...", ...]}
/// phi entries are element indices, or permutations when the group is given by permutations.
/// Element indices follow the breadth-first enumeration from the listed generators.
/// Throws SchemaError.
SingularityDescriptor parse_descriptor(const Json& doc);

/// Orthogonality, McKay and c/lambda round trips; the full run adds engine agreement.
Json selfcheck(bool quick);

Json to_json(const Census& census);
Json to_json(const Subgroup& subgroup);

}  // namespace khc::cli
