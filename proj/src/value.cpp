#include "probtree/value.hpp"

#include <charconv>
#include <stdexcept>

#include "probtree/numeric.hpp"

namespace probtree {

namespace {
[[noreturn]] void type_error(const char* want, const Value& v) {
  throw std::logic_error(std::string("Value: expected ") + want + ", got " +
                         v.render());
}
}  // namespace

bool Value::as_bool() const {
  if (!is_bool()) type_error("bool", *this);
  return std::get<bool>(rep_);
}

std::int64_t Value::as_int() const {
  if (!is_int()) type_error("int", *this);
  return std::get<std::int64_t>(rep_);
}

double Value::as_double() const {
  if (!is_double()) type_error("double", *this);
  return std::get<double>(rep_);
}

const std::string& Value::as_string() const {
  if (!is_string()) type_error("string", *this);
  return std::get<std::string>(rep_);
}

const Value::List& Value::as_list() const {
  if (!is_list()) type_error("list", *this);
  return std::get<List>(rep_);
}

std::string Value::render() const {
  struct Visitor {
    std::string operator()(std::monostate) const { return "()"; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const { return render_double(d); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(const List& xs) const {
      std::string out = "[";
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += xs[i].render();
      }
      out += "]";
      return out;
    }
  };
  return std::visit(Visitor{}, rep_);
}

Value to_value(const std::vector<std::int64_t>& xs) {
  Value::List out;
  out.reserve(xs.size());
  for (auto x : xs) out.emplace_back(x);
  return Value(std::move(out));
}

}  // namespace probtree
