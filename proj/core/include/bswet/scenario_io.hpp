#pragma once

#include <iosfwd>
#include <string>

#include "bswet/scenario.hpp"

namespace bswet {

// Structured text scenario file: `key = value` lines followed by an `[ers]`
// table with one row per energy receiver. `#` starts a comment; `-` in a
// table cell selects the documented default. See scenarios/ for examples.
Scenario load_scenario(const std::string& path);
Scenario read_scenario(std::istream& in, const std::string& name = "scenario");

/// FNV-1a 64-bit hash of the raw file bytes, hex encoded; used to stamp
/// result manifests so reruns can be tied to their exact inputs.
std::string file_hash_hex(const std::string& path);

}  // namespace bswet
