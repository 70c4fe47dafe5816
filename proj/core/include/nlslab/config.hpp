#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace nlslab {

/// Flat key-value configuration.
///
/// Grammar (one entry per line):
///   line    := blank | comment | entry
///   comment := '#' anything
///   entry   := key ws* '=' ws* value ws* ('#' anything)?
///   key     := [A-Za-z0-9_]+ ('.' [A-Za-z0-9_]+)*
/// Values are kept as trimmed text and typed on access. Lists are comma separated.
/// Duplicate keys are an error.
class Config {
 public:
  Config() = default;
  /// Throws ConfigError with the line number on malformed input.
  [[nodiscard]] static Config parse(std::string_view text);
  [[nodiscard]] static Config load(const std::string& path);

  /// Sorted "key = value" lines.
  [[nodiscard]] std::string canonical() const;
  /// FNV-1a 64 of the canonical form, as 16 hex digits.
  [[nodiscard]] std::string hash() const;

  [[nodiscard]] bool has(const std::string& key) const;
  void set(const std::string& key, std::string value);

  [[nodiscard]] std::string get_string(const std::string& key) const;
  [[nodiscard]] std::string get_string(const std::string& key, const std::string& fallback) const;
  [[nodiscard]] double get_double(const std::string& key) const;
  [[nodiscard]] double get_double(const std::string& key, double fallback) const;
  [[nodiscard]] long long get_int(const std::string& key) const;
  [[nodiscard]] long long get_int(const std::string& key, long long fallback) const;
  [[nodiscard]] std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  [[nodiscard]] bool get_bool(const std::string& key, bool fallback) const;
  [[nodiscard]] std::vector<double> get_doubles(const std::string& key,
                                                std::vector<double> fallback) const;

  /// Keys never read through a getter or has().
  [[nodiscard]] std::vector<std::string> unused_keys() const;
  [[nodiscard]] const std::map<std::string, std::string>& entries() const noexcept {
    return entries_;
  }

 private:
  [[nodiscard]] const std::string* find(const std::string& key) const;

  std::map<std::string, std::string> entries_;
  mutable std::set<std::string> accessed_;
};

[[nodiscard]] std::uint64_t fnv1a64(std::string_view data) noexcept;

}  // namespace nlslab
