// Copyright 2026 The Telesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TELESIM_DSL_LEXER_HPP_
#define TELESIM_DSL_LEXER_HPP_

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "telesim/scalar.hpp"

namespace telesim::dsl {

enum class Tok {
  ident,
  number,
  lparen,
  rparen,
  lbracket,
  rbracket,
  comma,
  equals,
  plus,
  minus,
  star,
  slash,
  dot,
  newline,
  comment,
  end,
};

struct Token {
  Tok kind = Tok::end;
  std::string_view text;
  int line = 1;
  int column = 1;
  size_t offset = 0;
};

inline std::string_view token_label(Tok k) {
  switch (k) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::comma: return "','";
    case Tok::equals: return "'='";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::slash: return "'/'";
    case Tok::dot: return "'.'";
    case Tok::newline: return "end of line";
    case Tok::comment: return "comment";
    case Tok::end: return "end of input";
  }
  return "token";
}

// Splits source text into tokens. Comments are kept so the parser can
// recover the leading comment block.
inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  size_t k = 0;
  auto is_ident_start = [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  };
  auto is_ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  };
  auto is_digit = [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  };
  auto emit = [&](Tok kind, size_t start, size_t len, int c0) {
    out.push_back(Token{kind, src.substr(start, len), line, c0, start});
  };
  while (k < src.size()) {
    char c = src[k];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++k;
      ++col;
      continue;
    }
    if (c == '\n') {
      emit(Tok::newline, k, 1, col);
      ++k;
      ++line;
      col = 1;
      continue;
    }
    if (c == '#') {
      size_t start = k;
      while (k < src.size() && src[k] != '\n') ++k;
      emit(Tok::comment, start, k - start, col);
      col += static_cast<int>(k - start);
      continue;
    }
    if (is_ident_start(c)) {
      size_t start = k;
      while (k < src.size() && is_ident_char(src[k])) ++k;
      emit(Tok::ident, start, k - start, col);
      col += static_cast<int>(k - start);
      continue;
    }
    if (is_digit(c) ||
        (c == '.' && k + 1 < src.size() && is_digit(src[k + 1]))) {
      size_t start = k;
      while (k < src.size() && is_digit(src[k])) ++k;
      if (k < src.size() && src[k] == '.') {
        ++k;
        while (k < src.size() && is_digit(src[k])) ++k;
      }
      if (k < src.size() && (src[k] == 'e' || src[k] == 'E')) {
        size_t save = k;
        ++k;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && is_digit(src[k])) {
          while (k < src.size() && is_digit(src[k])) ++k;
        } else {
          k = save;
        }
      }
      if (k < src.size() && is_ident_start(src[k])) {
        throw Error("malformed number", line, col);
      }
      emit(Tok::number, start, k - start, col);
      col += static_cast<int>(k - start);
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case '[': kind = Tok::lbracket; break;
      case ']': kind = Tok::rbracket; break;
      case ',': kind = Tok::comma; break;
      case '=': kind = Tok::equals; break;
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '.': kind = Tok::dot; break;
      default: {
        unsigned char uc = static_cast<unsigned char>(c);
        std::string shown = std::isprint(uc)
                                ? std::string(1, c)
                                : "\\x" + std::string(1, "0123456789abcdef"[uc >> 4]) +
                                      std::string(1, "0123456789abcdef"[uc & 15]);
        throw Error("unexpected character '" + shown + "'", line, col);
      }
    }
    emit(kind, k, 1, col);
    ++k;
    ++col;
  }
  out.push_back(Token{Tok::end, src.substr(src.size()), line, col, src.size()});
  return out;
}

}  // namespace telesim::dsl

#endif  // TELESIM_DSL_LEXER_HPP_
