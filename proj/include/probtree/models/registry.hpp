#pragma once

// The bundled-model registry: every model the CLI can run, keyed by name.

#include <functional>
#include <string>
#include <vector>

#include "probtree/model.hpp"

namespace probtree::models {

struct ModelEntry {
  std::string name;
  std::string description;
  std::function<Model<Value>()> build;
};

// All bundled models, sorted by name.
const std::vector<ModelEntry>& registry();

// Entry for `name`, or nullptr when unknown.
const ModelEntry* find_model(const std::string& name);

}  // namespace probtree::models
