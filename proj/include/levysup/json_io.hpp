#pragma once

#include <string>

#include "levysup/model.hpp"

namespace levysup {

// Parse a model description from JSON text; validates before returning.
// Unknown keys are rejected at every level so typos fail loudly.
ModelSpec parse_model(const std::string& json_text);

// Read and parse a model file.
ModelSpec load_model(const std::string& path);

std::string serialize_model(const ModelSpec& m);

}  // namespace levysup
