#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "torjet/arith.hpp"
#include "torjet/lattice_geom.hpp"

namespace torjet {

using json = nlohmann::ordered_json;

/// A parse error with its 1-based position in the input text.
class ParseFailure : public Error {
 public:
  ParseFailure(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_, column_;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Builds a DOM in which integer literals too large for 64 bits are kept as
// decimal strings, and any literal with a fraction or exponent is an error.
class ExactSax : public nlohmann::json_sax<json> {
 public:
  ExactSax() = default;

  bool null() override { return put(json(nullptr)); }
  bool boolean(bool v) override { return put(json(v)); }
  bool number_integer(number_integer_t v) override { return put(json(v)); }
  bool number_unsigned(number_unsigned_t v) override {
    if (v > static_cast<number_unsigned_t>(INT64_MAX)) return put(json(std::to_string(v)));
    return put(json(static_cast<std::int64_t>(v)));
  }
  bool number_float(number_float_t, const string_t& s) override {
    if (s.find_first_of(".eE") != std::string::npos) {
      error_ = "non-integer number '" + s + "'";
      return false;
    }
    return put(json(s));  // integer literal beyond 64 bits
  }
  bool string(string_t& s) override { return put(json(s)); }
  bool binary(binary_t&) override { return false; }
  bool start_object(std::size_t) override { return open(json::object()); }
  bool key(string_t& k) override {
    key_ = k;
    return true;
  }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return open(json::array()); }
  bool end_array() override { return close(); }
  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) override {
    error_ = ex.what();
    position_ = position;
    return false;
  }

  json result;
  std::string error_;
  std::optional<std::size_t> position_;

 private:
  bool put(json v) {
    if (stack_.empty()) {
      result = std::move(v);
    } else if (stack_.back()->is_array()) {
      stack_.back()->push_back(std::move(v));
    } else {
      (*stack_.back())[key_] = std::move(v);
    }
    return true;
  }
  bool open(json v) {
    json* slot;
    if (stack_.empty()) {
      result = std::move(v);
      slot = &result;
    } else if (stack_.back()->is_array()) {
      stack_.back()->push_back(std::move(v));
      slot = &stack_.back()->back();
    } else {
      (*stack_.back())[key_] = std::move(v);
      slot = &(*stack_.back())[key_];
    }
    stack_.push_back(slot);
    return true;
  }
  bool close() {
    stack_.pop_back();
    return true;
  }

  std::vector<json*> stack_;
  std::string key_;
};

}  // namespace detail

inline json parse_json_exact(const std::string& text) {
  detail::ExactSax sax;
  const bool ok = json::sax_parse(text, &sax);
  if (!ok) {
    // position is a byte count; recompute line and column ourselves
    std::size_t byte = sax.position_.value_or(text.size());
    if (byte > 0 && sax.position_) --byte;
    const auto [line, col] = detail::line_column(text, byte);
    throw ParseFailure(sax.error_.empty() ? "malformed JSON" : sax.error_, line, col);
  }
  return sax.result;
}

inline Integer json_integer(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return parse_integer(j.get<std::string>());
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::ParseError, where + ": expected an integer");
}

inline Rational json_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(json_integer(j, where));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::ParseError, where + ": expected an exact rational (integer or \"p/q\" string)");
}

inline json to_json(const Integer& x) {
  if (fits_int64(x)) return json(to_int64(x));
  return json(x.get_str());
}

inline json to_json(const Rational& x) {
  if (is_integral(x)) return to_json(Integer(x.get_num()));
  return json(to_string(x));
}

inline json to_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const RationalVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline std::vector<IntVector> json_points(const json& j, const std::string& field) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, field + ": expected an array of points");
  std::vector<IntVector> pts;
  std::size_t n = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& p = j[i];
    const std::string where = field + "[" + std::to_string(i) + "]";
    if (!p.is_array() || p.empty()) throw Error(ErrorCode::ParseError, where + ": expected a nonempty array of integers");
    if (i == 0) n = p.size();
    if (p.size() != n) throw Error(ErrorCode::ParseError, where + ": point has " + std::to_string(p.size()) + " coordinates, expected " + std::to_string(n));
    IntVector q;
    for (std::size_t c = 0; c < p.size(); ++c) q.push_back(json_integer(p[c], where));
    pts.push_back(std::move(q));
  }
  return pts;
}

inline RationalVector json_rationals(const json& j, const std::string& field) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, field + ": expected an array");
  RationalVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(json_rational(j[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

/// Contents of an input document: a point configuration (order kept) or a
/// vertex list, plus optional "u" and "k".
struct InputDocument {
  std::vector<IntVector> points;
  bool from_vertices = false;
  std::optional<RationalVector> u;
  std::optional<long> k;
};

inline InputDocument parse_input(const std::string& text) {
  const json j = parse_json_exact(text);
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "top level must be an object");
  InputDocument doc;
  if (j.contains("points")) {
    doc.points = json_points(j["points"], "points");
  } else if (j.contains("vertices")) {
    doc.points = json_points(j["vertices"], "vertices");
    doc.from_vertices = true;
  } else {
    throw Error(ErrorCode::ParseError, "missing \"points\" or \"vertices\"");
  }
  if (doc.points.empty()) throw Error(ErrorCode::ParseError, "empty point list");
  if (j.contains("order")) {
    if (!j["order"].is_string() || j["order"].get<std::string>() != "as-given")
      throw Error(ErrorCode::ParseError, "order: only \"as-given\" is supported");
  }
  if (j.contains("u")) doc.u = json_rationals(j["u"], "u");
  if (j.contains("k")) {
    const Integer k = json_integer(j["k"], "k");
    if (k < 0 || !fits_int64(k)) throw Error(ErrorCode::ParseError, "k: expected a nonnegative integer");
    doc.k = to_int64(k);
  }
  return doc;
}

/// Whole file, or standard input for "-".
inline std::string read_text(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace torjet
