#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace omega::cli {

// Locale-independent float formatting, 17 significant digits.
std::string format_float(double v);
std::string format_int(long long v);
std::string format_bool(bool b);

// Minimal JSON document builder: insertion-ordered object members, floats
// rendered through format_float so identical inputs yield identical bytes.
class JsonValue {
 public:
  JsonValue() : kind_(Kind::Null) {}

  static JsonValue object();
  static JsonValue array();
  static JsonValue number(double v);
  static JsonValue integer(long long v);
  static JsonValue boolean(bool b);
  static JsonValue string(std::string s);

  JsonValue& set(const std::string& key, JsonValue v);  // object members
  JsonValue& push(JsonValue v);                         // array elements

  std::string dump(int indent = 2) const;

 private:
  enum class Kind { Null, Object, Array, Scalar };

  void dump_to(std::string& out, int indent, int depth) const;

  Kind kind_;
  std::string scalar_;  // pre-rendered JSON token
  std::vector<std::pair<std::string, JsonValue>> members_;
  std::vector<JsonValue> elements_;
};

// CSV assembly with a fixed header; one line per row, '\n' separators.
class CsvBuilder {
 public:
  explicit CsvBuilder(std::string header) : text_(std::move(header)) { text_ += '\n'; }
  void row(const std::vector<std::string>& cells);
  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

}  // namespace omega::cli
