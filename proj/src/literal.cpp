#include "kdual/literal.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace kdual {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  Int integer() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected an integer", start);
    std::string s(text_.substr(start, pos_ - start));
    if (s.front() == '+') s.erase(0, 1);
    return Int(s);
  }
  std::size_t position() const { return pos_; }
  [[noreturn]] void fail(const std::string& what) { fail(what, pos_); }
  [[noreturn]] void fail(const std::string& what, std::size_t at) { throw ParseError(what, at); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::vector<Int> integer_list(Cursor& cur, char terminator_a, char terminator_b) {
  std::vector<Int> out;
  char c = cur.peek();
  if (c == terminator_a || c == terminator_b) return out;
  out.push_back(cur.integer());
  while (cur.accept(',')) out.push_back(cur.integer());
  return out;
}

}  // namespace

FgaGroup parse_group(std::string_view text) {
  Cursor cur(text);
  if (cur.at_end()) cur.fail("empty group literal");
  FgaGroup acc;
  do {
    const std::size_t at = cur.position();
    if (cur.accept('0')) continue;
    if (!cur.accept('Z')) cur.fail("expected 'Z' or '0'");
    if (cur.accept('^')) {
      Int k = cur.integer();
      if (k < 1 || !k.fits_ulong_p()) cur.fail("free rank exponent must be >= 1", at);
      acc = direct_sum(acc, FgaGroup::free(k.get_ui()));
    } else if (cur.accept('/')) {
      Int n = cur.integer();
      if (n < 2) cur.fail("cyclic order must be >= 2", at);
      acc = direct_sum(acc, FgaGroup::cyclic(n));
    } else {
      acc = direct_sum(acc, FgaGroup::free(1));
    }
  } while (cur.accept('+'));
  if (!cur.at_end()) cur.fail("unexpected trailing input");
  return acc;
}

GroupElement parse_element(std::string_view text, const FgaGroup& shape) {
  Cursor cur(text);
  cur.expect('(');
  std::vector<Int> torsion = integer_list(cur, ';', ')');
  std::vector<Int> free;
  if (cur.accept(';')) free = integer_list(cur, ')', ')');
  cur.expect(')');
  if (!cur.at_end()) cur.fail("unexpected trailing input");
  if (torsion.size() != shape.factor_count())
    cur.fail("element has " + std::to_string(torsion.size()) + " torsion coordinates, group " + shape.to_string() +
                 " needs " + std::to_string(shape.factor_count()),
             0);
  if (free.size() != shape.free_rank())
    cur.fail("element has " + std::to_string(free.size()) + " free coordinates, group " + shape.to_string() +
                 " needs " + std::to_string(shape.free_rank()),
             0);
  return GroupElement(shape, std::move(torsion), std::move(free));
}

IntMatrix parse_matrix(std::string_view text) {
  Cursor cur(text);
  cur.expect('[');
  IntMatrix m;
  if (!cur.accept(']')) {
    do {
      const std::size_t at = cur.position();
      cur.expect('[');
      std::vector<Int> row = integer_list(cur, ']', ']');
      cur.expect(']');
      if (m.rows() > 0 && row.size() != m.cols()) cur.fail("ragged matrix row", at);
      if (row.empty()) cur.fail("empty matrix row", at);
      m.append_row(row);
    } while (cur.accept(','));
    cur.expect(']');
  }
  if (!cur.at_end()) cur.fail("unexpected trailing input");
  return m;
}

}  // namespace kdual
