#include <cctype>
#include <charconv>

#include "polyrank/poly.hpp"

namespace polyrank {

namespace {

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := atom ['^' uint]
// atom   := uint | 'x' uint | 't' | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view text, const Ring& ring, std::size_t n) : s_(text), ring_(ring), n_(n) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("polynomial '" + std::string(s_) + "': " + what + " at position " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::uint64_t uint() {
    skip_ws();
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec == std::errc::invalid_argument) fail("expected an integer");
    if (ec == std::errc::result_out_of_range) fail("integer too large");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  MultiPoly expr() {
    MultiPoly acc(ring_, n_);
    bool negate = false;
    if (eat('-')) negate = true;
    else eat('+');
    for (;;) {
      MultiPoly t = term();
      acc += negate ? -t : t;
      if (eat('+')) negate = false;
      else if (eat('-')) negate = true;
      else break;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  MultiPoly factor() {
    MultiPoly base = atom();
    if (eat('^')) {
      const std::size_t at = pos_;
      const std::uint64_t e = uint();
      if (e > 1000) {
        pos_ = at;
        fail("exponent too large");
      }
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  MultiPoly atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!eat(')')) fail("missing ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::uint64_t v = uint();
      return MultiPoly::constant(ring_, n_, ring_.from_int(static_cast<std::int64_t>(v % ring_.characteristic())));
    }
    if (c == 'x') {
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("variable needs an index");
      const std::size_t at = pos_;
      const std::uint64_t i = uint();
      if (i < 1 || i > n_) {
        pos_ = at;
        fail("unknown variable x" + std::to_string(i) + " (vars: " + std::to_string(n_) + ")");
      }
      return MultiPoly::variable(ring_, n_, static_cast<std::size_t>(i - 1));
    }
    if (c == 't') {
      if (ring_.kind() != RingKind::ExtensionField) fail("'t' names the generator of an extension field");
      ++pos_;
      const std::vector<Elem> gen{0, 1};
      return MultiPoly::constant(ring_, n_, ring_.from_coefficients(gen));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const Ring& ring_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, const Ring& ring, std::size_t n) {
  return Parser(text, ring, n).parse();
}

}  // namespace polyrank
