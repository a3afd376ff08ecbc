#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hardycover/errors.hpp"

namespace hardycover {

/// One signed generator x^{+1} or x^{-1}.
struct Letter {
  int gen = 0;
  int exp = 1;

  Letter inverse() const { return {gen, -exp}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Cancels adjacent inverse pairs. The result is freely reduced.
inline std::vector<Letter> free_reduce(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (const Letter& l : letters) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

inline bool is_freely_reduced(std::span<const Letter> letters) {
  for (std::size_t i = 1; i < letters.size(); ++i) {
    if (letters[i] == letters[i - 1].inverse()) return false;
  }
  return true;
}

/// An element of the free group of rank `rank`, always stored freely reduced.
/// The empty word is the identity.
class Word {
 public:
  Word() = default;
  explicit Word(int rank) : rank_(rank) {}

  Word(int rank, std::span<const Letter> letters) : rank_(rank) {
    for (const Letter& l : letters) {
      if (l.gen < 0 || l.gen >= rank) {
        throw word_error("generator index " + std::to_string(l.gen) +
                         " outside alphabet of rank " + std::to_string(rank));
      }
      if (l.exp != 1 && l.exp != -1) {
        throw word_error("letter exponent must be +1 or -1");
      }
    }
    letters_ = free_reduce(letters);
  }

  Word(int rank, std::initializer_list<Letter> letters)
      : Word(rank, std::span<const Letter>(letters.begin(), letters.size())) {}

  static Word generator(int rank, int gen, int exp = 1) {
    const Letter l{gen, exp};
    return Word(rank, std::span<const Letter>(&l, 1));
  }

  int rank() const { return rank_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::span<const Letter> letters() const { return letters_; }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  int rank_ = 0;
  std::vector<Letter> letters_;
};

inline void require_same_rank(const Word& a, const Word& b) {
  if (a.rank() != b.rank()) {
    throw word_error("words over different generator sets (rank " +
                     std::to_string(a.rank()) + " vs " +
                     std::to_string(b.rank()) + ")");
  }
}

inline Word multiply(const Word& a, const Word& b) {
  require_same_rank(a, b);
  std::vector<Letter> joined(a.begin(), a.end());
  joined.insert(joined.end(), b.begin(), b.end());
  return Word(a.rank(), joined);
}

inline Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(it->inverse());
  }
  return Word(w.rank(), out);
}

inline Word operator*(const Word& a, const Word& b) { return multiply(a, b); }

inline Word power(const Word& w, int e) {
  Word base = e < 0 ? invert(w) : w;
  Word out(w.rank());
  for (int i = 0; i < std::abs(e); ++i) out = out * base;
  return out;
}

/// Strips inverse pairs from the two ends so that the word is cyclically
/// reduced. Returns the cyclic core.
inline std::vector<Letter> cyclic_core(const Word& w) {
  std::span<const Letter> s = w.letters();
  std::size_t lo = 0;
  std::size_t hi = s.size();
  while (hi - lo >= 2 && s[lo] == s[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return {s.begin() + lo, s.begin() + hi};
}

/// True when a and b are conjugate in the free group, i.e. their cyclic cores
/// are rotations of one another.
inline bool free_conjugate(const Word& a, const Word& b) {
  require_same_rank(a, b);
  const auto ca = cyclic_core(a);
  const auto cb = cyclic_core(b);
  if (ca.size() != cb.size()) return false;
  if (ca.empty()) return true;
  for (std::size_t shift = 0; shift < ca.size(); ++shift) {
    bool match = true;
    for (std::size_t i = 0; i < ca.size() && match; ++i) {
      match = ca[(i + shift) % ca.size()] == cb[i];
    }
    if (match) return true;
  }
  return false;
}

/// Exponent sum of each generator.
inline std::vector<long> exponent_sums(const Word& w) {
  std::vector<long> sums(static_cast<std::size_t>(w.rank()), 0);
  for (const Letter& l : w) sums[static_cast<std::size_t>(l.gen)] += l.exp;
  return sums;
}

inline std::string to_string(const Word& w, std::span<const std::string> names) {
  if (w.empty()) return "1";
  std::string out;
  for (const Letter& l : w) {
    if (!out.empty()) out += ' ';
    out += names[static_cast<std::size_t>(l.gen)];
    if (l.exp < 0) out += "^-1";
  }
  return out;
}

}  // namespace hardycover
