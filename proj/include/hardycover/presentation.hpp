#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hardycover/errors.hpp"
#include "hardycover/word.hpp"

namespace hardycover {

/// A finitely presented group: named generators, relators, and optionally the
/// action of an involutive automorphism on each generator.
struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  std::optional<std::vector<Word>> tau;

  int rank() const { return static_cast<int>(generators.size()); }

  int index_of(std::string_view name) const {
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (generators[i] == name) return static_cast<int>(i);
    }
    throw word_error("unknown generator '" + std::string(name) + "'");
  }

  void check_word(const Word& w) const {
    if (w.rank() != rank()) {
      throw word_error("word of rank " + std::to_string(w.rank()) +
                       " used with a presentation of rank " +
                       std::to_string(rank()));
    }
  }

  Word identity() const { return Word(rank()); }
  Word generator(int i, int exp = 1) const { return Word::generator(rank(), i, exp); }
  Word generator(std::string_view name, int exp = 1) const {
    return generator(index_of(name), exp);
  }

  /// Parses whitespace separated tokens `X`, `X^-1` or `X^k`; "1" is the
  /// identity.
  Word parse(std::string_view text) const {
    std::istringstream in{std::string(text)};
    std::string token;
    Word out = identity();
    while (in >> token) {
      if (token == "1") continue;
      int e = 1;
      if (auto caret = token.find('^'); caret != std::string::npos) {
        try {
          e = std::stoi(token.substr(caret + 1));
        } catch (const std::exception&) {
          throw word_error("bad exponent in token '" + token + "'");
        }
        token.resize(caret);
      }
      out = out * power(generator(token), e);
    }
    return out;
  }

  std::string format(const Word& w) const {
    check_word(w);
    return to_string(w, generators);
  }
};

/// Letter-by-letter substitution by the involution, then free reduction.
inline Word apply_involution(const Presentation& p, const Word& w) {
  if (!p.tau) throw word_error("presentation carries no involution");
  p.check_word(w);
  Word out = p.identity();
  for (const Letter& l : w) {
    const Word& image = (*p.tau)[static_cast<std::size_t>(l.gen)];
    out = out * (l.exp > 0 ? image : invert(image));
  }
  return out;
}

}  // namespace hardycover
