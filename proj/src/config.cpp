#include "hypnls/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hypnls/errors.hpp"

namespace hypnls {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_key(const std::string& key) {
  if (key.empty() || key.front() == '.' || key.back() == '.') return false;
  return std::all_of(key.begin(), key.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; });
}

std::pair<std::string, std::string> split_assignment(const std::string& line, const std::string& where) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) throw ConfigError(where + ": expected key=value, got '" + line + "'");
  auto key = trim(line.substr(0, eq));
  auto value = trim(line.substr(eq + 1));
  if (!valid_key(key)) throw ConfigError(where + ": invalid key '" + key + "'");
  return {key, value};
}

}  // namespace

Config Config::from_text(const std::string& text, const std::string& source) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    auto [key, value] = split_assignment(line, where);
    if (cfg.contains(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
    cfg.entries_[key] = value;
  }
  return cfg;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str(), path);
}

void Config::apply_override(const std::string& assignment) {
  auto [key, value] = split_assignment(trim(assignment), "--override");
  entries_[key] = value;
}

double parse_number(const std::string& key, const std::string& text) {
  const auto s = trim(text);
  if (s.empty()) throw ConfigError("key '" + key + "': expected a number, got an empty value");
  // Rational literals such as 1/3 are accepted.
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const double num = parse_number(key, s.substr(0, slash));
    const double den = parse_number(key, s.substr(slash + 1));
    if (den == 0.0) throw ConfigError("key '" + key + "': division by zero");
    return num / den;
  }
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError("key '" + key + "': expected a finite number, got '" + s + "'");
  }
  return v;
}

std::vector<double> parse_number_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(key, item));
  if (out.empty()) throw ConfigError("key '" + key + "': expected a comma-separated list of numbers");
  return out;
}

ResolvedConfig::ResolvedConfig(std::vector<KeyEntry> schema, const Config& user) : schema_(std::move(schema)) {
  for (const auto& s : schema_) values_[s.key] = s.default_value;
  for (const auto& [key, value] : user.entries()) {
    if (!values_.count(key)) throw ConfigError("unknown key '" + key + "'");
    values_[key] = value;
  }
  for (const auto& s : schema_) {
    const auto& v = values_[s.key];
    switch (s.type) {
      case KeyType::Number:
        parse_number(s.key, v);
        break;
      case KeyType::Integer:
        integer(s.key);
        break;
      case KeyType::Flag:
        flag(s.key);
        break;
      case KeyType::NumberList:
        parse_number_list(s.key, v);
        break;
      case KeyType::Text:
        if (v.empty()) throw ConfigError("key '" + s.key + "' must not be empty");
        break;
    }
  }
}

const KeyEntry& ResolvedConfig::entry(const std::string& key, KeyType type) const {
  for (const auto& s : schema_) {
    if (s.key == key) {
      if (s.type != type) throw ConfigError("key '" + key + "' requested with the wrong type");
      return s;
    }
  }
  throw ConfigError("key '" + key + "' is not part of this experiment");
}

double ResolvedConfig::number(const std::string& key) const {
  entry(key, KeyType::Number);
  return parse_number(key, values_.at(key));
}

long ResolvedConfig::integer(const std::string& key) const {
  entry(key, KeyType::Integer);
  const auto& s = values_.at(key);
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + s + "'");
  }
  return v;
}

const std::string& ResolvedConfig::text(const std::string& key) const {
  entry(key, KeyType::Text);
  return values_.at(key);
}

bool ResolvedConfig::flag(const std::string& key) const {
  entry(key, KeyType::Flag);
  const auto& s = values_.at(key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + s + "'");
}

std::vector<double> ResolvedConfig::numbers(const std::string& key) const {
  entry(key, KeyType::NumberList);
  return parse_number_list(key, values_.at(key));
}

std::string ResolvedConfig::serialize() const {
  std::ostringstream os;
  for (const auto& [key, value] : values_) os << key << " = " << value << '\n';
  return os.str();
}

}  // namespace hypnls
