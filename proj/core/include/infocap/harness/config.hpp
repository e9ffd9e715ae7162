#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace infocap::harness {

/// One [section] of a configuration file. Every getter marks its key as used so
/// that misspelled keys can be reported by reject_unknown().
class Section {
 public:
  Section() = default;
  explicit Section(std::string name) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }
  void set(const std::string& key, const std::string& value, int line);
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::optional<std::string> find(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<std::string> get_strings(const std::string& key, std::vector<std::string> fallback) const;
  std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;
  std::vector<int> get_ints(const std::string& key, std::vector<int> fallback) const;
  std::vector<std::uint64_t> get_u64s(const std::string& key, std::vector<std::uint64_t> fallback) const;

  /// ConfigError naming the first key that no getter has read.
  void reject_unknown() const;

 private:
  std::string name_;
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> used_;
};

/// Flat "key = value" document with [section] headers; '#' starts a comment.
/// Keys before the first header belong to the unnamed section "".
class ConfigFile {
 public:
  static ConfigFile parse(std::string_view text);
  static ConfigFile load(const std::filesystem::path& path);

  bool has_section(const std::string& name) const { return sections_.count(name) != 0; }
  /// The named section, or an empty one when absent.
  const Section& section(const std::string& name) const;

 private:
  std::map<std::string, Section> sections_;
};

// Scalar parsers shared with the CLI. ConfigError on malformed input.
double parse_double(std::string_view text, std::string_view what);
long parse_long(std::string_view text, std::string_view what);
std::uint64_t parse_u64(std::string_view text, std::string_view what);
std::vector<std::string> split_list(std::string_view text);

}  // namespace infocap::harness
