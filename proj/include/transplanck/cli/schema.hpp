#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace transplanck::cli {

struct SchemaViolation {
  std::string path;  ///< JSON pointer into the instance
  std::string message;
};

/// Validates against the JSON-Schema keywords the run-config schema uses:
/// type, properties, required, additionalProperties (boolean), enum, const,
/// minimum / maximum / exclusiveMinimum / exclusiveMaximum (numeric form),
/// items (single schema), minItems, maxItems, oneOf and local "#/..." $ref.
/// Unknown keywords are ignored.
std::vector<SchemaViolation> validate_against(const nlohmann::json& schema,
                                              const nlohmann::json& instance);

/// The published run-config schema, parsed once.
const nlohmann::json& run_config_schema();

}  // namespace transplanck::cli
