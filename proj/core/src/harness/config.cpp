#include "infocap/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "infocap/errors.hpp"

namespace infocap::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string where(const std::string& section, const std::string& key) {
  return section.empty() ? key : section + "." + key;
}

}  // namespace

double parse_double(std::string_view text, std::string_view what) {
  const auto t = trim(text);
  double v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError(std::string(what) + ": expected a number, got '" + std::string(t) + "'");
  }
  return v;
}

long parse_long(std::string_view text, std::string_view what) {
  const auto t = trim(text);
  long v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError(std::string(what) + ": expected an integer, got '" + std::string(t) + "'");
  }
  return v;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  const auto t = trim(text);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError(std::string(what) + ": expected an unsigned integer, got '" + std::string(t) + "'");
  }
  return v;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      const auto item = trim(text.substr(start, i - start));
      if (item.empty()) throw ConfigError("empty item in list '" + std::string(text) + "'");
      out.emplace_back(item);
      start = i + 1;
    }
  }
  return out;
}

void Section::set(const std::string& key, const std::string& value, int line) {
  if (!values_.emplace(key, value).second) {
    throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + where(name_, key) + "'");
  }
}

std::optional<std::string> Section::find(const std::string& key) const {
  used_.insert(key);
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string Section::get_string(const std::string& key, const std::string& fallback) const {
  return find(key).value_or(fallback);
}

double Section::get_double(const std::string& key, double fallback) const {
  const auto v = find(key);
  return v ? parse_double(*v, where(name_, key)) : fallback;
}

long Section::get_int(const std::string& key, long fallback) const {
  const auto v = find(key);
  return v ? parse_long(*v, where(name_, key)) : fallback;
}

std::uint64_t Section::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto v = find(key);
  return v ? parse_u64(*v, where(name_, key)) : fallback;
}

bool Section::get_bool(const std::string& key, bool fallback) const {
  const auto v = find(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw ConfigError(where(name_, key) + ": expected a boolean, got '" + *v + "'");
}

std::vector<std::string> Section::get_strings(const std::string& key,
                                              std::vector<std::string> fallback) const {
  const auto v = find(key);
  return v ? split_list(*v) : fallback;
}

std::vector<double> Section::get_doubles(const std::string& key, std::vector<double> fallback) const {
  const auto v = find(key);
  if (!v) return fallback;
  std::vector<double> out;
  for (const auto& s : split_list(*v)) out.push_back(parse_double(s, where(name_, key)));
  return out;
}

std::vector<int> Section::get_ints(const std::string& key, std::vector<int> fallback) const {
  const auto v = find(key);
  if (!v) return fallback;
  std::vector<int> out;
  for (const auto& s : split_list(*v)) out.push_back(static_cast<int>(parse_long(s, where(name_, key))));
  return out;
}

std::vector<std::uint64_t> Section::get_u64s(const std::string& key,
                                             std::vector<std::uint64_t> fallback) const {
  const auto v = find(key);
  if (!v) return fallback;
  std::vector<std::uint64_t> out;
  for (const auto& s : split_list(*v)) out.push_back(parse_u64(s, where(name_, key)));
  return out;
}

void Section::reject_unknown() const {
  for (const auto& [k, v] : values_) {
    if (!used_.count(k)) throw ConfigError("unknown key '" + where(name_, k) + "'");
  }
}

ConfigFile ConfigFile::parse(std::string_view text) {
  ConfigFile cfg;
  std::string current;
  cfg.sections_.emplace(current, Section(current));
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (current.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty section name");
      if (cfg.sections_.count(current) && current != "") {
        throw ConfigError("line " + std::to_string(line_no) + ": duplicate section [" + current + "]");
      }
      cfg.sections_.emplace(current, Section(current));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    }
    cfg.sections_.at(current).set(std::string(key), std::string(value), line_no);
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const Section& ConfigFile::section(const std::string& name) const {
  static const Section empty;
  const auto it = sections_.find(name);
  return it == sections_.end() ? empty : it->second;
}

}  // namespace infocap::harness
