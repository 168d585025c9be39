#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mrs/errors.hpp"
#include "mrs/lorentz.hpp"

namespace mrs {

/// Fixed-format number: 17 significant digits, negative zero collapsed to
/// zero. Non-finite values are refused so no emitted document can carry a
/// NaN or an infinity.
inline std::string json_number(double v) {
  if (!std::isfinite(v))
    throw Error(Errc::IoError, "non-finite number in JSON output");
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

inline std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x",
                        static_cast<unsigned>(static_cast<unsigned char>(ch)));
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

/// Streaming JSON writer with byte-deterministic output: two-space
/// indentation, %.17g numbers, and object keys required to arrive in strictly
/// increasing order, so every document is key-sorted by construction.
/// Ordering violations are programming errors and throw std::logic_error.
class JsonWriter {
 public:
  JsonWriter& begin_object() {
    open('{', true);
    return *this;
  }
  JsonWriter& end_object() {
    close('}', true);
    return *this;
  }
  JsonWriter& begin_array() {
    open('[', false);
    return *this;
  }
  JsonWriter& end_array() {
    close(']', false);
    return *this;
  }

  JsonWriter& key(std::string_view k) {
    if (stack_.empty() || !stack_.back().is_object || stack_.back().has_key)
      throw std::logic_error("JsonWriter: key outside an object");
    Frame& f = stack_.back();
    if (f.count > 0 && k <= f.last_key)
      throw std::logic_error("JsonWriter: object keys must be sorted (\"" +
                             std::string(k) + "\" after \"" + f.last_key +
                             "\")");
    if (f.count > 0) out_ += ',';
    out_ += '\n';
    indent();
    out_ += '"';
    out_ += json_escape(k);
    out_ += "\": ";
    f.last_key = std::string(k);
    f.has_key = true;
    ++f.count;
    return *this;
  }

  JsonWriter& value(double v) { return scalar(json_number(v)); }
  JsonWriter& value(int v) { return scalar(std::to_string(v)); }
  JsonWriter& value(long v) { return scalar(std::to_string(v)); }
  JsonWriter& value(bool v) { return scalar(v ? "true" : "false"); }
  JsonWriter& value(std::string_view s) {
    return scalar('"' + json_escape(s) + '"');
  }
  JsonWriter& value(const char* s) { return value(std::string_view(s)); }
  JsonWriter& null_value() { return scalar("null"); }

  /// [c1, c2, c3] as a nested array value.
  JsonWriter& value(const Vec3L& v) {
    begin_array();
    value(v.c1);
    value(v.c2);
    value(v.c3);
    return end_array();
  }

  /// Finished document plus a trailing newline.
  std::string take() {
    if (!stack_.empty() || !root_done_)
      throw std::logic_error("JsonWriter: document is not complete");
    out_ += '\n';
    return std::move(out_);
  }

 private:
  struct Frame {
    bool is_object = false;
    bool has_key = false;
    long count = 0;
    std::string last_key;
  };

  void indent() { out_.append(2 * stack_.size(), ' '); }

  // Positions the cursor where a value may start: inline after "key": ,
  // comma/newline-separated inside an array, or the (single) document root.
  void element_prefix() {
    if (stack_.empty()) {
      if (root_done_)
        throw std::logic_error("JsonWriter: multiple root values");
      return;
    }
    Frame& f = stack_.back();
    if (f.is_object) {
      if (!f.has_key)
        throw std::logic_error("JsonWriter: object value without a key");
      f.has_key = false;
      return;
    }
    if (f.count > 0) out_ += ',';
    out_ += '\n';
    indent();
    ++f.count;
  }

  JsonWriter& scalar(const std::string& text) {
    element_prefix();
    out_ += text;
    if (stack_.empty()) root_done_ = true;
    return *this;
  }

  void open(char c, bool is_object) {
    element_prefix();
    out_ += c;
    stack_.push_back(Frame{is_object, false, 0, {}});
  }

  void close(char c, bool is_object) {
    if (stack_.empty() || stack_.back().is_object != is_object ||
        stack_.back().has_key)
      throw std::logic_error("JsonWriter: mismatched container close");
    const bool had_entries = stack_.back().count > 0;
    stack_.pop_back();
    if (had_entries) {
      out_ += '\n';
      indent();
    }
    out_ += c;
    if (stack_.empty()) root_done_ = true;
  }

  std::string out_;
  std::vector<Frame> stack_;
  bool root_done_ = false;
};

}  // namespace mrs
