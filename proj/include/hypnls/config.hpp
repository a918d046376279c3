#pragma once

#include <map>
#include <string>
#include <vector>

namespace hypnls {

/// Flat `key = value` text with dotted sections (grid.R = 40); `#` starts a comment.
class Config {
 public:
  static Config from_text(const std::string& text, const std::string& source = "<text>");
  static Config from_file(const std::string& path);

  /// Accepts "key=value".
  void apply_override(const std::string& assignment);
  void set(const std::string& key, const std::string& value) { entries_[key] = value; }

  bool contains(const std::string& key) const { return entries_.count(key) != 0; }
  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

enum class KeyType { Number, Integer, Text, Flag, NumberList };

struct KeyEntry {
  std::string key;
  KeyType type;
  std::string default_value;
};

/// User config merged over a schema. Every key is type-checked on construction; keys outside the
/// schema are rejected. The serialized form lists every key, defaults included.
class ResolvedConfig {
 public:
  ResolvedConfig(std::vector<KeyEntry> schema, const Config& user);

  double number(const std::string& key) const;
  long integer(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;

  const std::map<std::string, std::string>& values() const noexcept { return values_; }
  std::string serialize() const;

 private:
  const KeyEntry& entry(const std::string& key, KeyType type) const;

  std::vector<KeyEntry> schema_;
  std::map<std::string, std::string> values_;
};

double parse_number(const std::string& key, const std::string& text);
std::vector<double> parse_number_list(const std::string& key, const std::string& text);

}  // namespace hypnls
