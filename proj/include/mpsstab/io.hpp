#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mpsstab/certify.hpp"

namespace mpsstab {

/// Malformed input. Syntax errors carry a 1-based line and column; shape
/// errors carry the JSON pointer of the offending value and line = 0.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column, std::string pointer = {})
      : std::runtime_error(what), line_(line), column_(column), pointer_(std::move(pointer)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& pointer() const { return pointer_; }

 private:
  int line_;
  int column_;
  std::string pointer_;
};

/// Input file could not be read or output could not be written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

using Json = nlohmann::json;

Json complex_to_json(Scalar z);
Json matrix_to_json(const Matrix& m);
/// Rows of [re, im] pairs; `pointer` names the value in diagnostics.
Matrix matrix_from_json(const Json& j, const std::string& pointer);

Json tensor_to_json(const MpsTensor& a);
MpsTensor tensor_from_json(const Json& j);
/// Parses text, converting syntax errors to ParseError with line/column.
Json parse_json_text(const std::string& text);
MpsTensor parse_tensor(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);
MpsTensor load_tensor(const std::string& path);
void save_tensor(const std::string& path, const MpsTensor& a);

/// 64-bit FNV-1a over the canonical serialization, as 16 hex digits.
std::string content_hash(const MpsTensor& a);

struct WitnessFile {
  StabilityWitness witness;
  Matrix O;
};

Json witness_to_json(const StabilityWitness& w, const PushingOperator& op);
WitnessFile witness_from_json(const Json& j);

}  // namespace mpsstab
