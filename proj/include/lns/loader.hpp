#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lns/language.hpp"
#include "lns/process.hpp"

namespace lns {

std::string read_file(const std::filesystem::path& path);

// Parse a .lnsl file; an undeclared name defaults to the filename stem.
LanguagePtr load_language_file(const std::filesystem::path& path);

struct LoadedScript {
  ProcessPtr process;
  std::map<std::string, LanguagePtr> languages; // resolved `use` imports
};

// Parse a .lns script, resolving each `use NAME` to NAME.lnsl in the given
// directories (first hit wins).
LoadedScript load_script_text(const std::string& text,
                              const std::vector<std::filesystem::path>& search_dirs,
                              const std::string& where = "");
LoadedScript load_script_file(const std::filesystem::path& path,
                              std::vector<std::filesystem::path> search_dirs = {});

} // namespace lns
