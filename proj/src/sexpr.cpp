#include "sexpr.hpp"

#include <cctype>

namespace dialectic::detail {

namespace {

struct reader {
  std::string_view s;
  const std::string& file;
  std::size_t i = 0;
  int line = 1, col = 1;

  [[noreturn]] void fail(const std::string& what) const { throw parse_error(file, line, col, what); }

  void advance() {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
      ++col;
    }
    ++i;
  }

  void skip() {
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        advance();
      } else if (s[i] == ';' || s[i] == '#') {
        while (i < s.size() && s[i] != '\n') advance();
      } else {
        break;
      }
    }
  }

  sexpr read() {
    skip();
    if (i >= s.size()) fail("unexpected end of input");
    sexpr e;
    e.line = line;
    e.col = col;
    if (s[i] == '(') {
      e.is_list = true;
      advance();
      while (true) {
        skip();
        if (i >= s.size()) fail("unclosed '('");
        if (s[i] == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
      }
    } else if (s[i] == ')') {
      fail("unexpected ')'");
    } else if (s[i] == '"') {
      e.quoted = true;
      advance();
      while (i < s.size() && s[i] != '"') {
        e.text += s[i];
        advance();
      }
      if (i >= s.size()) fail("unterminated string");
      advance();
    } else {
      while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' &&
             s[i] != ')' && s[i] != '"' && s[i] != ';') {
        e.text += s[i];
        advance();
      }
    }
    return e;
  }
};

}  // namespace

std::vector<sexpr> parse_sexprs(std::string_view src, const std::string& file) {
  reader r{src, file};
  std::vector<sexpr> out;
  while (true) {
    r.skip();
    if (r.i >= src.size()) break;
    out.push_back(r.read());
  }
  return out;
}

}  // namespace dialectic::detail
