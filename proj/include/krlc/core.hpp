#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "krlc/errors.hpp"

namespace krlc {

using Variable = std::string;

/// User-written variable names: [a-zA-Z_][a-zA-Z0-9_']*.
/// Names containing '$' are reserved for generated variables and are
/// rejected by all parsers, so the two namespaces cannot collide.
inline bool is_valid_variable_name(const std::string& name) {
  if (name.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  for (char c : name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  }
  return true;
}

/// An assignment to an ordered variable list; equality is positional.
struct Assignment {
  std::vector<Variable> over;
  std::vector<bool> bits;

  bool operator==(const Assignment& other) const = default;
};

/// A finite non-empty sequence of variable sets over a declared universe.
/// Step t (1-based) stores one bit per universe variable.
struct Trace {
  std::vector<Variable> universe;
  std::vector<std::vector<bool>> steps;

  std::size_t length() const { return steps.size(); }

  std::optional<std::size_t> var_index(const Variable& v) const {
    auto it = std::find(universe.begin(), universe.end(), v);
    if (it == universe.end()) return std::nullopt;
    return static_cast<std::size_t>(it - universe.begin());
  }

  /// Truth of `v` at 1-based time t.
  bool holds(std::size_t t, const Variable& v) const {
    if (t < 1 || t > steps.size()) fail("TimeOutOfRange", "t=" + std::to_string(t));
    auto idx = var_index(v);
    if (!idx) fail("UnknownVariable", v);
    return steps[t - 1][*idx];
  }
};

/// bit i = 1 iff over[i] is in the step set.
inline Assignment assignment_of(const std::vector<Variable>& step,
                                const std::vector<Variable>& over) {
  Assignment a;
  a.over = over;
  a.bits.resize(over.size());
  for (std::size_t i = 0; i < over.size(); ++i) {
    a.bits[i] = std::find(step.begin(), step.end(), over[i]) != step.end();
  }
  return a;
}

/// Bit-vectors are indexed by their binary value, first bit most significant,
/// matching the reading order of the printed form ("10" -> 2).
inline std::size_t index_from_bits(const std::vector<bool>& bits) {
  std::size_t idx = 0;
  for (bool b : bits) idx = (idx << 1) | static_cast<std::size_t>(b);
  return idx;
}

inline std::vector<bool> bits_from_index(std::size_t index, std::size_t width) {
  std::vector<bool> bits(width);
  for (std::size_t i = 0; i < width; ++i) {
    bits[width - 1 - i] = (index >> i) & 1u;
  }
  return bits;
}

inline std::string bits_to_string(const std::vector<bool>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

namespace detail {

inline void skip_ws(const std::string& text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

inline std::string read_identifier(const std::string& text, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < text.size() &&
         (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
          text[pos] == '\'')) {
    ++pos;
  }
  return text.substr(start, pos - start);
}

}  // namespace detail

/// Trace grammar: steps separated by ';', each step '{v1,v2,...}' or '{}'.
/// Whitespace is insignificant. The empty text is rejected: interpretations
/// are non-empty sequences.
inline Trace parse_trace(const std::string& text, const std::vector<Variable>& universe) {
  Trace trace;
  trace.universe = universe;
  std::size_t pos = 0;
  detail::skip_ws(text, pos);
  if (pos >= text.size()) fail("EmptyTrace", "a trace must have at least one step");
  while (true) {
    detail::skip_ws(text, pos);
    if (pos >= text.size() || text[pos] != '{') throw syntax_error("expected '{'", pos);
    ++pos;
    std::vector<bool> step(universe.size(), false);
    detail::skip_ws(text, pos);
    if (pos < text.size() && text[pos] != '}') {
      while (true) {
        detail::skip_ws(text, pos);
        std::string name = detail::read_identifier(text, pos);
        if (name.empty()) throw syntax_error("expected variable name", pos);
        auto it = std::find(universe.begin(), universe.end(), name);
        if (it == universe.end()) fail("UnknownVariable", name);
        step[static_cast<std::size_t>(it - universe.begin())] = true;
        detail::skip_ws(text, pos);
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        break;
      }
    }
    if (pos >= text.size() || text[pos] != '}') throw syntax_error("expected '}'", pos);
    ++pos;
    trace.steps.push_back(std::move(step));
    detail::skip_ws(text, pos);
    if (pos < text.size() && text[pos] == ';') {
      ++pos;
      continue;
    }
    break;
  }
  detail::skip_ws(text, pos);
  if (pos != text.size()) throw syntax_error("unexpected trailing input", pos);
  return trace;
}

inline std::string serialize_trace(const Trace& trace) {
  std::string out;
  for (std::size_t t = 0; t < trace.steps.size(); ++t) {
    if (t > 0) out += "; ";
    out += '{';
    bool first = true;
    for (std::size_t i = 0; i < trace.universe.size(); ++i) {
      if (!trace.steps[t][i]) continue;
      if (!first) out += ',';
      out += trace.universe[i];
      first = false;
    }
    out += '}';
  }
  return out;
}

/// JSON alternative: array of arrays of strings, e.g. [["a"],[],["a","b"]].
inline Trace parse_trace_json(const std::string& text, const std::vector<Variable>& universe) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_array() || j.empty()) fail("EmptyTrace", "expected a non-empty JSON array");
  Trace trace;
  trace.universe = universe;
  for (const auto& step_json : j) {
    std::vector<bool> step(universe.size(), false);
    for (const auto& name_json : step_json) {
      std::string name = name_json.get<std::string>();
      auto it = std::find(universe.begin(), universe.end(), name);
      if (it == universe.end()) fail("UnknownVariable", name);
      step[static_cast<std::size_t>(it - universe.begin())] = true;
    }
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

/// Trace with the given 1-based step sets, for tests and programmatic use.
inline Trace make_trace(const std::vector<Variable>& universe,
                        const std::vector<std::vector<Variable>>& steps) {
  if (steps.empty()) fail("EmptyTrace", "a trace must have at least one step");
  Trace trace;
  trace.universe = universe;
  for (const auto& step : steps) {
    trace.steps.push_back(assignment_of(step, universe).bits);
  }
  return trace;
}

}  // namespace krlc
