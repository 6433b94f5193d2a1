#pragma once

// Flat key=value files (one pair per line, '#' comments) used for optimizer
// result files and the --config option.

#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qclone {

// File-system failures, as opposed to malformed content (-> invalid_argument).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string kv_trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::pair<std::string, std::string>> read_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = kv_trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected key=value");
    const std::string key = kv_trim(stripped.substr(0, eq));
    const std::string value = kv_trim(stripped.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": empty key");
    pairs.emplace_back(key, value);
  }
  return pairs;
}

inline void write_kv_file(const std::string& path,
                          const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  for (const auto& [key, value] : pairs) out << key << "=" << value << "\n";
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace qclone
