#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dialectic/common.hpp"

namespace dialectic::detail {

struct sexpr {
  bool is_list = false;
  bool quoted = false;
  std::string text;
  std::vector<sexpr> items;
  int line = 1;
  int col = 1;

  bool is_symbol(std::string_view s) const { return !is_list && !quoted && text == s; }
};

// one or more top-level expressions; ';' and '#' start comments
std::vector<sexpr> parse_sexprs(std::string_view src, const std::string& file);

}  // namespace dialectic::detail
