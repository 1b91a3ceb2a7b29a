#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dplab {

/// Malformed or incomplete experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat INI document: `[section]` headers, `key = value` lines, `#` or `;`
/// comments. Keys outside any section belong to section "".
class IniDocument {
 public:
  static IniDocument parse(std::string_view text, const std::string& origin = "<string>");
  static IniDocument load(const std::filesystem::path& path);

  std::optional<std::string> find(const std::string& section, const std::string& key) const;
  bool empty() const noexcept { return entries_.empty(); }
  /// "section.key" for every entry, in file order of sections then keys.
  std::vector<std::string> qualified_keys() const;
  const std::string& origin() const noexcept { return origin_; }
  /// All keys of one section (sorted).
  std::vector<std::string> keys(const std::string& section) const;

 private:
  std::string origin_;
  std::map<std::string, std::map<std::string, std::string>> entries_;
};

/// Typed view over an IniDocument that accumulates missing and malformed
/// keys instead of stopping at the first one; finish() reports them all,
/// together with keys that were never read.
class ConfigReader {
 public:
  explicit ConfigReader(const IniDocument& doc) : doc_(doc) {}

  bool has(const std::string& section, const std::string& key) const;

  std::string text(const std::string& section, const std::string& key);
  std::string text(const std::string& section, const std::string& key, const std::string& fallback);
  double number(const std::string& section, const std::string& key);
  double number(const std::string& section, const std::string& key, double fallback);
  std::size_t count(const std::string& section, const std::string& key);
  std::size_t count(const std::string& section, const std::string& key, std::size_t fallback);
  bool flag(const std::string& section, const std::string& key, bool fallback);
  /// Comma-separated lists; must be nonempty.
  std::vector<double> numbers(const std::string& section, const std::string& key);
  std::vector<double> numbers(const std::string& section, const std::string& key,
                              const std::vector<double>& fallback);
  std::vector<std::size_t> counts(const std::string& section, const std::string& key);
  std::vector<std::string> texts(const std::string& section, const std::string& key);

  /// Every remaining key of a section as numbers (builtin parameter maps).
  std::map<std::string, double, std::less<>> number_map(const std::string& section,
                                                        const std::set<std::string>& skip);

  void fail(const std::string& message) { problems_.push_back(message); }
  /// Throws ConfigError listing every missing key, bad value and unknown key.
  void finish() const;

 private:
  std::optional<std::string> raw(const std::string& section, const std::string& key, bool required);

  const IniDocument& doc_;
  std::set<std::string> used_;
  std::vector<std::string> missing_;
  std::vector<std::string> problems_;
};

}  // namespace dplab
