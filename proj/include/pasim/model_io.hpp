#pragma once

#include <stdexcept>
#include <string>

#include "pasim/model.hpp"

namespace pasim {

/// Syntax or schema error while reading a model document. Syntax errors carry a
/// 1-based line/column; schema errors carry the JSON path of the offending value
/// and line = column = 0.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column, std::string path);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& path() const { return path_; }

 private:
  int line_;
  int column_;
  std::string path_;
};

Model parse_model(const std::string& text);
Model load_model_file(const std::string& path);

/// Canonical JSON text for a model (two-space indent, schema key order).
std::string serialize_model(const Model& model);

/// 64-bit FNV-1a digest of the canonical serialization, as 16 hex digits.
std::string model_digest(const Model& model);

}  // namespace pasim
