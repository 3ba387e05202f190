#pragma once

#include <string>
#include <vector>

#include "skewloc/lattice_operator.hpp"

namespace skewloc {

// Canonical text form; serialize(parse(serialize(s))) is byte-identical.
std::string serialize_spec(const OperatorSpec& spec);
OperatorSpec parse_spec(const std::string& text); // throws FormatError with a line number

void save_spec(const OperatorSpec& spec, const std::string& path);
OperatorSpec load_spec(const std::string& path);

// Parses the file and re-checks all admissibility invariants; empty list
// means the spec is admissible. Parse failures throw FormatError.
std::vector<std::string> validate_spec_file(const std::string& path);

} // namespace skewloc
