#include "fontrec/manifest.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "fontrec/common.hpp"

namespace fontrec {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, int line,
                       const std::string& what) {
  throw DataError(path.string() + ":" + std::to_string(line) + ": " + what);
}

template <class T>
T parse_num(std::string_view sv, const std::filesystem::path& path, int line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), value);
  if (ec != std::errc() || ptr != sv.data() + sv.size())
    fail(path, line, "expected a number, got '" + std::string(sv) + "'");
  return value;
}

}  // namespace

void write_manifest(const DatasetManifest& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for write: " + path.string());
  out << "# fontrec-manifest v" << m.version << "\n";
  out << "# height " << m.height << "\n";
  out << "# domain " << m.domain << "\n";
  out << "# classes " << m.class_count << "\n";
  for (const auto& e : m.entries)
    out << e.path << '\t' << e.class_id << '\t' << e.seed << '\n';
  if (!out) throw DataError("short write: " + path.string());
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open: " + path.string());
  DatasetManifest m;
  m.class_count = -1;
  std::string line;
  int lineno = 0;
  std::set<std::string> seen_paths;
  bool got_version = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string key;
      hs >> key;
      if (key == "fontrec-manifest") {
        std::string v;
        hs >> v;
        if (v.size() < 2 || v[0] != 'v')
          fail(path, lineno, "bad version tag '" + v + "'");
        m.version = parse_num<int>(std::string_view(v).substr(1), path, lineno);
        got_version = true;
      } else if (key == "height") {
        hs >> m.height;
      } else if (key == "domain") {
        hs >> m.domain;
      } else if (key == "classes") {
        hs >> m.class_count;
      }
      continue;
    }
    std::vector<std::string_view> fields;
    std::string_view sv(line);
    size_t start = 0;
    while (true) {
      const size_t tab = sv.find('\t', start);
      fields.push_back(sv.substr(start, tab == std::string_view::npos
                                            ? std::string_view::npos
                                            : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 3)
      fail(path, lineno,
           "expected 3 tab-separated fields, got " + std::to_string(fields.size()));
    ManifestEntry e;
    e.path = std::string(fields[0]);
    if (e.path.empty()) fail(path, lineno, "empty image path");
    e.class_id = parse_num<int>(fields[1], path, lineno);
    e.seed = parse_num<std::uint64_t>(fields[2], path, lineno);
    if (!seen_paths.insert(e.path).second)
      fail(path, lineno, "duplicate image path '" + e.path + "'");
    m.entries.push_back(std::move(e));
  }
  if (!got_version) throw DataError(path.string() + ": missing manifest header");
  if (m.class_count < 0) throw DataError(path.string() + ": missing classes header");
  for (size_t i = 0; i < m.entries.size(); ++i) {
    const int c = m.entries[i].class_id;
    if (c < -1 || c >= m.class_count)
      throw DataError(path.string() + ": class id " + std::to_string(c) +
                      " out of range [-1, " + std::to_string(m.class_count) + ")");
  }
  return m;
}

}  // namespace fontrec
