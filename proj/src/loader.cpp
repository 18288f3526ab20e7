#include "lns/loader.hpp"

#include <fstream>
#include <sstream>

#include "lns/errors.hpp"
#include "lns/parser.hpp"

namespace lns {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

LanguagePtr load_language_file(const fs::path& path) {
  Language l = parse_language(read_file(path), path.string());
  if (!l.name) l.name = path.stem().string();
  return std::make_shared<Language>(std::move(l));
}

LoadedScript load_script_text(const std::string& text,
                              const std::vector<fs::path>& search_dirs,
                              const std::string& where) {
  LoadedScript out;
  for (const auto& name : scan_uses(text)) {
    if (out.languages.count(name)) continue;
    bool found = false;
    for (const auto& dir : search_dirs) {
      fs::path candidate = dir / (name + ".lnsl");
      std::error_code ec;
      if (fs::exists(candidate, ec)) {
        out.languages[name] = load_language_file(candidate);
        found = true;
        break;
      }
    }
    if (!found)
      throw Error(ErrorKind::Io, (where.empty() ? "" : where + ": ") + "no " + name +
                                     ".lnsl found for 'use " + name + "'");
  }
  out.process = parse_script(text, out.languages, where);
  return out;
}

LoadedScript load_script_file(const fs::path& path,
                              std::vector<fs::path> search_dirs) {
  if (search_dirs.empty()) {
    fs::path dir = path.parent_path();
    search_dirs.push_back(dir.empty() ? fs::path(".") : dir);
  }
  return load_script_text(read_file(path), search_dirs, path.string());
}

} // namespace lns
