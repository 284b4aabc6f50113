#ifndef UNISTOCH_JSON_IO_HPP
#define UNISTOCH_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "unistoch/entangle.hpp"
#include "unistoch/matcore.hpp"
#include "unistoch/unicheck.hpp"

namespace unistoch {

using Json = nlohmann::json;

// Repo-wide JSON matrix format: {"n": int, "kind": "bistochastic"|"unitary",
// "entries": [...]} with real matrices as row arrays of numbers and complex
// matrices as row arrays of [re, im] pairs.

Json to_json(const BistochasticMatrix& b);
Json to_json(const UnitaryMatrix& u);
Json to_json(const UnistochasticityVerdict& v);
Json to_json(const EntangledBasis& basis);

/// Bare real matrix (no wrapper object); used for JSON-lines sample streams.
Json matrix_to_json(const Matrix& m);

/// Parses the wrapper object; throws ParseError on malformed input and the
/// usual validation errors if the entries fail their invariants.
BistochasticMatrix read_bistochastic(const Json& j, double atol = kDefaultAtol);
UnitaryMatrix read_unitary(const Json& j, double atol = kDefaultAtol);

/// Reads a whole file; ParseError covers unreadable files and bad JSON.
Json load_json_file(const std::string& path);

} // namespace unistoch

#endif
