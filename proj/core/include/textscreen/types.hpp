#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace textscreen {

using DocId = std::uint32_t;

// Thrown for malformed inputs: config strings, cost files, reference lists,
// wire frames.  `where` identifies the offending source (path, field, ...).
class ParseError : public std::runtime_error {
public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

private:
  std::string where_;
};

// Thrown when a config value is out of its documented domain.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace textscreen
