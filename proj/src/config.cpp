#include "dplab/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace dplab {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::optional<double> to_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::size_t> to_count(const std::string& s) {
  const auto v = to_number(s);
  if (!v || *v < 0.0 || *v != std::floor(*v) || *v > 1e15) return std::nullopt;
  return static_cast<std::size_t>(*v);
}

std::string qualified(const std::string& section, const std::string& key) {
  return section.empty() ? key : section + "." + key;
}

}  // namespace

IniDocument IniDocument::parse(std::string_view text, const std::string& origin) {
  IniDocument doc;
  doc.origin_ = origin;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(fmt::format("{}:{}: unterminated section header", origin, line_no));
      }
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(fmt::format("{}:{}: empty section name", origin, line_no));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("{}:{}: expected 'key = value'", origin, line_no));
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (const auto hash = value.find(" #"); hash != std::string::npos) value = trim(value.substr(0, hash));
    if (key.empty()) throw ConfigError(fmt::format("{}:{}: empty key", origin, line_no));
    auto& slot = doc.entries_[section];
    if (slot.count(key)) {
      throw ConfigError(fmt::format("{}:{}: duplicate key {}", origin, line_no, qualified(section, key)));
    }
    slot.emplace(key, value);
  }
  return doc;
}

IniDocument IniDocument::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot read config {}", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

std::optional<std::string> IniDocument::find(const std::string& section,
                                             const std::string& key) const {
  const auto s = entries_.find(section);
  if (s == entries_.end()) return std::nullopt;
  const auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  return k->second;
}

std::vector<std::string> IniDocument::qualified_keys() const {
  std::vector<std::string> out;
  for (const auto& [section, kv] : entries_) {
    for (const auto& [key, value] : kv) out.push_back(qualified(section, key));
  }
  return out;
}

std::vector<std::string> IniDocument::keys(const std::string& section) const {
  std::vector<std::string> out;
  if (const auto s = entries_.find(section); s != entries_.end()) {
    for (const auto& [key, value] : s->second) out.push_back(key);
  }
  return out;
}

bool ConfigReader::has(const std::string& section, const std::string& key) const {
  return doc_.find(section, key).has_value();
}

std::optional<std::string> ConfigReader::raw(const std::string& section, const std::string& key,
                                             bool required) {
  const std::string name = qualified(section, key);
  used_.insert(name);
  auto v = doc_.find(section, key);
  if (!v && required && std::find(missing_.begin(), missing_.end(), name) == missing_.end()) {
    missing_.push_back(name);
  }
  return v;
}

std::string ConfigReader::text(const std::string& section, const std::string& key) {
  const auto v = raw(section, key, true);
  return v ? *v : std::string{};
}

std::string ConfigReader::text(const std::string& section, const std::string& key,
                               const std::string& fallback) {
  const auto v = raw(section, key, false);
  return v ? *v : fallback;
}

double ConfigReader::number(const std::string& section, const std::string& key) {
  const auto v = raw(section, key, true);
  if (!v) return 0.0;
  const auto n = to_number(*v);
  if (!n) fail(fmt::format("{} is not a number: '{}'", qualified(section, key), *v));
  return n.value_or(0.0);
}

double ConfigReader::number(const std::string& section, const std::string& key, double fallback) {
  return has(section, key) ? number(section, key) : (raw(section, key, false), fallback);
}

std::size_t ConfigReader::count(const std::string& section, const std::string& key) {
  const auto v = raw(section, key, true);
  if (!v) return 0;
  const auto n = to_count(*v);
  if (!n) fail(fmt::format("{} is not a nonnegative integer: '{}'", qualified(section, key), *v));
  return n.value_or(0);
}

std::size_t ConfigReader::count(const std::string& section, const std::string& key,
                                std::size_t fallback) {
  return has(section, key) ? count(section, key) : (raw(section, key, false), fallback);
}

bool ConfigReader::flag(const std::string& section, const std::string& key, bool fallback) {
  const auto v = raw(section, key, false);
  if (!v) return fallback;
  if (*v == "true") return true;
  if (*v == "false") return false;
  fail(fmt::format("{} must be true or false: '{}'", qualified(section, key), *v));
  return fallback;
}

std::vector<double> ConfigReader::numbers(const std::string& section, const std::string& key) {
  const auto v = raw(section, key, true);
  if (!v) return {};
  std::vector<double> out;
  for (const auto& item : split_list(*v)) {
    const auto n = to_number(item);
    if (!n) {
      fail(fmt::format("{} has a non-numeric entry '{}'", qualified(section, key), item));
      return {};
    }
    out.push_back(*n);
  }
  if (out.empty()) fail(fmt::format("{} must not be empty", qualified(section, key)));
  return out;
}

std::vector<double> ConfigReader::numbers(const std::string& section, const std::string& key,
                                          const std::vector<double>& fallback) {
  return has(section, key) ? numbers(section, key) : (raw(section, key, false), fallback);
}

std::vector<std::size_t> ConfigReader::counts(const std::string& section, const std::string& key) {
  std::vector<std::size_t> out;
  for (double v : numbers(section, key)) {
    if (v < 0.0 || v != std::floor(v)) {
      fail(fmt::format("{} must hold nonnegative integers", qualified(section, key)));
      return {};
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::vector<std::string> ConfigReader::texts(const std::string& section, const std::string& key) {
  const auto v = raw(section, key, true);
  if (!v) return {};
  auto out = split_list(*v);
  if (out.empty() || std::any_of(out.begin(), out.end(), [](const auto& s) { return s.empty(); })) {
    fail(fmt::format("{} must be a nonempty list", qualified(section, key)));
  }
  return out;
}

std::map<std::string, double, std::less<>> ConfigReader::number_map(
    const std::string& section, const std::set<std::string>& skip) {
  std::map<std::string, double, std::less<>> out;
  for (const auto& key : doc_.keys(section)) {
    if (skip.count(key)) continue;
    out[key] = number(section, key);
  }
  return out;
}

void ConfigReader::finish() const {
  std::vector<std::string> lines;
  if (!missing_.empty()) {
    std::string joined;
    for (const auto& m : missing_) joined += (joined.empty() ? "" : ", ") + m;
    lines.push_back("missing keys: " + joined);
  }
  for (const auto& p : problems_) lines.push_back(p);
  for (const auto& key : doc_.qualified_keys()) {
    if (!used_.count(key)) lines.push_back("unknown key: " + key);
  }
  if (lines.empty()) return;
  std::string msg = doc_.origin() + ": invalid config";
  for (const auto& l : lines) msg += "\n  " + l;
  throw ConfigError(msg);
}

}  // namespace dplab
