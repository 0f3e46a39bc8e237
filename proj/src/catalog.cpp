#include "mipkit/catalog.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string_view>

#include "mipkit/error.hpp"

namespace mipkit {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_catalog();
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_fixtures();
}  // namespace detail

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> out;
    for (const auto& [name, text] : detail::embedded_catalog()) out.push_back({std::string(name), std::string(text)});
    return out;
  }();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw UsageError(fmt::format("unknown catalog group '{}'", name));
}

Presentation catalog_presentation(const std::string& name) { return parse_presentation(catalog_entry(name).text); }

PcGroup catalog_group(const std::string& name) { return catalog_presentation(name).group; }

std::optional<std::string> embedded_fixture(const std::string& name) {
  std::string key = name;
  if (auto dot = key.rfind('.'); dot != std::string::npos) key.resize(dot);
  for (const auto& [n, text] : detail::embedded_fixtures())
    if (n == key) return std::string(text);
  return std::nullopt;
}

Presentation load_presentation(const std::string& source) {
  if (source.rfind("catalog:", 0) == 0) return catalog_presentation(source.substr(8));
  std::ifstream in(source);
  if (!in) throw UsageError(fmt::format("cannot open '{}'", source));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

}  // namespace mipkit
