#pragma once

#include <cctype>
#include <cstdlib>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace wigmd::detail {

// Recursive-descent parser for the small expression language shared by the
// operator syntax ("(M1 + 0.5*D2)^2 + (0.5*D1 - M2)^2") and the Cohen kernel
// syntax ("0.5*xi*eta + eta^2"). The Algebra supplies the value type and the
// semantic actions:
//   Value number(double), Value imag(), Value symbol(std::string_view),
//   Value add/sub/mul(Value, Value), Value neg(Value), Value pow(Value, int).
template <class Algebra>
class ExprParser {
public:
  using Value = typename Algebra::Value;

  explicit ExprParser(std::string_view text) : text_(text) {}

  Value parse() {
    Value v = sum();
    skip_ws();
    if (pos_ != text_.size()) fail(Errc::parse_error, "unexpected trailing input in expression");
    return v;
  }

private:
  Value sum() {
    Value v = product();
    for (;;) {
      skip_ws();
      if (consume('+'))
        v = Algebra::add(std::move(v), product());
      else if (consume('-'))
        v = Algebra::sub(std::move(v), product());
      else
        return v;
    }
  }

  Value product() {
    Value v = power();
    for (;;) {
      skip_ws();
      if (consume('*'))
        v = Algebra::mul(std::move(v), power());
      else
        return v;
    }
  }

  Value power() {
    Value v = atom();
    skip_ws();
    if (consume('^')) {
      skip_ws();
      const size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == start) fail(Errc::parse_error, "exponent must be a nonnegative integer");
      const int e = std::atoi(std::string(text_.substr(start, pos_ - start)).c_str());
      v = Algebra::pow(std::move(v), e);
    }
    return v;
  }

  Value atom() {
    skip_ws();
    if (consume('-')) return Algebra::neg(power());
    if (consume('+')) return power();
    if (consume('(')) {
      Value v = sum();
      skip_ws();
      if (!consume(')')) fail(Errc::parse_error, "missing closing parenthesis");
      return v;
    }
    if (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        char* end = nullptr;
        const std::string rest(text_.substr(pos_));
        const double x = std::strtod(rest.c_str(), &end);
        if (end == rest.c_str()) fail(Errc::parse_error, "malformed number");
        pos_ += static_cast<size_t>(end - rest.c_str());
        return Algebra::number(x);
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        const size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "i" || name == "I") return Algebra::imag();
        return Algebra::symbol(name);
      }
    }
    fail(Errc::parse_error, "unexpected character in expression");
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace wigmd::detail
