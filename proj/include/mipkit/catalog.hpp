#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mipkit/presentation.hpp"

namespace mipkit {

struct CatalogEntry {
  std::string name;
  std::string text;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& name);
Presentation catalog_presentation(const std::string& name);
PcGroup catalog_group(const std::string& name);

// Built-in fixture text by base name (e.g. "553_554").
std::optional<std::string> embedded_fixture(const std::string& name);

// `catalog:<name>` or a path to a presentation file.
Presentation load_presentation(const std::string& source);

}  // namespace mipkit
