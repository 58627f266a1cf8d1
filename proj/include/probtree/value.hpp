#pragma once

// Outcome values that can flow through a `dist` choice, key a memo table, or
// land in a weight table. A small structural-equality variant: unit, bool,
// 64-bit int, double, string, and list. Ordering is total (variant index
// first, then content) so tables iterate deterministically.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace probtree {

struct Unit {};

class Value {
 public:
  using List = std::vector<Value>;
  using Rep =
      std::variant<std::monostate, bool, std::int64_t, double, std::string, List>;

  Value() : rep_(std::monostate{}) {}
  Value(bool b) : rep_(b) {}
  Value(int i) : rep_(static_cast<std::int64_t>(i)) {}
  Value(std::int64_t i) : rep_(i) {}
  Value(double d) : rep_(d) {}
  Value(const char* s) : rep_(std::string(s)) {}
  Value(std::string s) : rep_(std::move(s)) {}
  Value(List xs) : rep_(std::move(xs)) {}

  const Rep& rep() const { return rep_; }

  bool is_unit() const { return std::holds_alternative<std::monostate>(rep_); }
  bool is_bool() const { return std::holds_alternative<bool>(rep_); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(rep_); }
  bool is_double() const { return std::holds_alternative<double>(rep_); }
  bool is_string() const { return std::holds_alternative<std::string>(rep_); }
  bool is_list() const { return std::holds_alternative<List>(rep_); }

  bool as_bool() const;
  std::int64_t as_int() const;
  double as_double() const;
  const std::string& as_string() const;
  const List& as_list() const;

  bool operator==(const Value& o) const { return rep_ == o.rep_; }
  bool operator!=(const Value& o) const { return !(*this == o); }
  bool operator<(const Value& o) const { return rep_ < o.rep_; }

  // Compact textual form ("()", "true", "3", "[0,2,4]", ...) used for TSV
  // output and tie-breaking sort order.
  std::string render() const;

 private:
  Rep rep_;
};

inline Value to_value(Unit) { return Value(); }
inline Value to_value(bool b) { return Value(b); }
inline Value to_value(int i) { return Value(i); }
inline Value to_value(std::int64_t i) { return Value(i); }
inline Value to_value(double d) { return Value(d); }
inline Value to_value(std::string s) { return Value(std::move(s)); }
inline Value to_value(const Value& v) { return v; }
Value to_value(const std::vector<std::int64_t>& xs);

template <class T>
T from_value(const Value& v);

template <>
inline Value from_value<Value>(const Value& v) {
  return v;
}
template <>
inline Unit from_value<Unit>(const Value&) {
  return Unit{};
}
template <>
inline bool from_value<bool>(const Value& v) {
  return v.as_bool();
}
template <>
inline std::int64_t from_value<std::int64_t>(const Value& v) {
  return v.as_int();
}
template <>
inline double from_value<double>(const Value& v) {
  return v.as_double();
}
template <>
inline std::string from_value<std::string>(const Value& v) {
  return v.as_string();
}

}  // namespace probtree
