#include "ntcc/dsl/sexp.hpp"

#include <cctype>

#include "ntcc/errors.hpp"

namespace ntcc::dsl {

std::string_view Sexp::head() const {
  if (!is_list() || items.empty() || !items[0].is_atom() || !items[0].indices.empty()) return {};
  return items[0].text;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<Sexp> all() {
    std::vector<Sexp> out;
    while (skip_space(), pos_ < text_.size()) out.push_back(read());
    return out;
  }

 private:
  SourceSpan here() const { return {line_, col_}; }

  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, line_, col_); }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  static bool delimiter(char c) {
    return c == '\0' || c == '(' || c == ')' || c == '[' || c == ']' || c == ';' ||
           std::isspace(static_cast<unsigned char>(c));
  }

  Sexp read() {
    skip_space();
    Sexp s;
    s.span = here();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = peek();
    if (c == ')') fail("unexpected ')'");
    if (c == ']' || c == '[') fail(std::string("unexpected '") + c + "'");
    if (c == '(') {
      s.kind = Sexp::Kind::List;
      advance();
      while (true) {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input: missing ')'");
        if (peek() == ')') break;
        s.items.push_back(read());
      }
      advance();
      return s;
    }
    while (!delimiter(peek())) {
      s.text += peek();
      advance();
    }
    while (peek() == '[') {
      advance();
      s.indices.push_back(read());
      skip_space();
      if (pos_ >= text_.size()) fail("unexpected end of input: missing ']'");
      if (peek() != ']') fail("expected ']'");
      advance();
    }
    if (s.text.empty()) fail("index without a name");
    return s;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

void write(std::string& out, const Sexp& s) {
  if (s.is_atom()) {
    out += s.text;
    for (const auto& i : s.indices) {
      out += '[';
      write(out, i);
      out += ']';
    }
    return;
  }
  out += '(';
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    if (i) out += ' ';
    write(out, s.items[i]);
  }
  out += ')';
}

// Number of leading arguments kept on the head's line.
std::size_t inline_args(std::string_view head) {
  if (head == "when" || head == "unless" || head == "defproc" || head == "local" || head == "nextn" ||
      head == "main")
    return 2;
  if (head.empty()) return 0;
  return 1;
}

}  // namespace

std::vector<Sexp> read_all(std::string_view text) { return Reader(text).all(); }

std::string to_string(const Sexp& s) {
  std::string out;
  write(out, s);
  return out;
}

std::string pretty(const Sexp& s, std::size_t width, std::size_t indent) {
  std::string flat = to_string(s);
  if (!s.is_list() || indent + flat.size() <= width || s.items.size() < 2) return flat;
  const std::string_view head = s.head();
  const std::size_t keep = std::min(s.items.size(), 1 + inline_args(head));
  std::string out = "(";
  for (std::size_t i = 0; i < keep; ++i) {
    if (i) out += ' ';
    out += to_string(s.items[i]);
  }
  if (keep == 0) out += pretty(s.items[0], width, indent + 1);
  const std::size_t start = keep == 0 ? 1 : keep;
  const std::string pad(indent + 2, ' ');
  for (std::size_t i = start; i < s.items.size(); ++i) {
    out += '\n';
    out += pad;
    out += pretty(s.items[i], width, indent + 2);
  }
  out += ')';
  return out;
}

}  // namespace ntcc::dsl
