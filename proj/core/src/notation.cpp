#include <cctype>
#include <charconv>
#include <stdexcept>

#include "adlv/weyl.hpp"

namespace adlv {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ == text_.size();
  }
  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }
  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }
  int integer() {
    skip_space();
    int value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{}) fail("expected an integer");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }
  std::vector<int> int_list() {
    expect("[");
    std::vector<int> out;
    if (accept("]")) return out;
    do {
      out.push_back(integer());
    } while (accept(","));
    expect("]");
    return out;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("cannot parse element '" + std::string(text_) + "' at offset " + std::to_string(pos_) +
                                ": " + why);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

void check_word(const std::vector<int>& word, int lo, int n, Cursor& cur) {
  for (int i : word) {
    if (i < lo || i >= n) cur.fail("reflection index " + std::to_string(i) + " outside [" + std::to_string(lo) + ", " + std::to_string(n - 1) + "]");
  }
}

AffineElement translated(const std::vector<int>& lambda, int n, Cursor& cur) {
  if (static_cast<int>(lambda.size()) != n) {
    cur.fail("translation has " + std::to_string(lambda.size()) + " entries, expected " + std::to_string(n));
  }
  return AffineElement::translation(lambda);
}

}  // namespace

AffineElement parse_element(std::string_view text, int n) {
  if (n < 2 || n > kMaxRank) throw std::invalid_argument("rank must lie in [2, " + std::to_string(kMaxRank) + "]");
  Cursor cur(text);
  AffineElement w;
  if (cur.accept("affine_Weyl")) {
    cur.expect("(");
    const std::vector<int> lambda = cur.int_list();
    cur.expect(",");
    const std::vector<int> word = cur.int_list();
    cur.expect(")");
    check_word(word, 1, n, cur);
    w = translated(lambda, n, cur) * AffineElement::from_word(n, word);
  } else if (cur.accept("exp")) {
    cur.expect("(");
    const std::vector<int> word = cur.int_list();
    cur.expect(")");
    check_word(word, 0, n, cur);
    w = AffineElement::from_word(n, word);
  } else if (cur.accept("t")) {
    w = translated(cur.int_list(), n, cur);
    std::vector<int> word;
    while (cur.accept("s")) word.push_back(cur.integer());
    check_word(word, 0, n, cur);
    w = w * AffineElement::from_word(n, word);
  } else if (cur.accept("Id") || cur.accept("id")) {
    w = AffineElement::identity(n);
  } else {
    cur.fail("unknown element form");
  }
  if (!cur.done()) cur.fail("trailing input");
  return w;
}

std::string format_int_list(std::span<const int> v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

std::string format_element(const AffineElement& w) {
  const std::vector<int> word = w.finite().reduced_word();
  return "affine_Weyl(" + format_int_list(w.translation()) + "," + format_int_list(word) + ")";
}

}  // namespace adlv
