#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "snapbm/geometry.hpp"

namespace snapbm {

/// Parses {"boundary": CURVE, "barriers": [{"curve": CURVE, "lambda_plus": f,
/// "lambda_minus": f}, ...]}. CURVE is one of
///   {"type":"circle","center":[x,y],"radius":r}
///   {"type":"ellipse","center":[x,y],"semi_axes":[a,b],"rotation":t}
///   {"type":"spline","points":[[x,y],...]}
/// Barrier entries may also carry the curve fields inline. Throws
/// ConfigError with a field path on malformed input.
DomainSpec domain_from_json(const nlohmann::json& j);

nlohmann::json domain_to_json(const DomainSpec& domain);

/// reads and parses a config file; parse errors keep the byte position
DomainSpec load_domain_config(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// FNV-1a over the raw config bytes, for provenance stamping of outputs
uint64_t fnv1a64(const std::string& bytes);

}  // namespace snapbm
