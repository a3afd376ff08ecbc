#pragma once

#include <string>
#include <vector>

#include "hardycover/errors.hpp"
#include "hardycover/presentation.hpp"
#include "hardycover/word.hpp"

namespace hardycover {

// Generator labels. Boundary loops are A0..A{k-1}, the loops crossing to the
// mirror copy are B1..B{k-1}, handles are A'i/B'i and their mirrors A''i/B''i.
inline std::string boundary_label(char letter, int j) {
  return std::string(1, letter) + std::to_string(j);
}
inline std::string handle_label(char letter, int primes, int i) {
  return std::string(1, letter) + std::string(static_cast<std::size_t>(primes), '\'') +
         std::to_string(i);
}

/// Fundamental group of a bordered surface of genus s with k boundary circles.
struct GroupPresentation {
  int s = 0;
  int k = 1;
  Presentation group;

  const Word& relator() const { return group.relators.front(); }
};

/// Fundamental group of the double of such a surface, with the action of the
/// anti-holomorphic involution on generators.
struct DoubledPresentation {
  int s = 0;
  int k = 1;
  int genus = 0;
  Presentation group;

  const Word& relator() const { return group.relators.front(); }
  const Word& tau(int gen) const { return (*group.tau)[static_cast<std::size_t>(gen)]; }

  /// Loop around boundary component i. A0 is not a generator of the double;
  /// it is eliminated through the surface relation.
  Word boundary_loop(int i) const {
    check_component(i);
    if (i > 0) return group.generator(boundary_label('A', i));
    Word handles = group.identity();
    for (int h = 1; h <= s; ++h) {
      handles = handles * group.parse(handle_label('A', 1, h) + " " + handle_label('B', 1, h) +
                                      " " + handle_label('A', 1, h) + "^-1 " +
                                      handle_label('B', 1, h) + "^-1");
    }
    for (int j = k - 1; j >= 1; --j) handles = handles * group.generator(boundary_label('A', j));
    return invert(handles);
  }

  /// Deck transformation T with p^tau = T p for the base lift p of component i.
  Word boundary_monodromy(int i) const {
    check_component(i);
    if (i == 0) return group.identity();
    return group.generator(boundary_label('B', i));
  }

  void check_component(int i) const {
    if (i < 0 || i >= k) {
      throw invalid_surface("boundary component " + std::to_string(i) + " out of range");
    }
  }
};

inline void check_surface(int s, int k) {
  if (s < 0) throw invalid_surface("genus must be non-negative, got " + std::to_string(s));
  if (k < 1) {
    throw invalid_surface("a bordered surface needs k >= 1 boundary components, got " +
                          std::to_string(k));
  }
}

namespace detail {
inline Word commutator(const Presentation& p, const std::string& a, const std::string& b) {
  return p.generator(a) * p.generator(b) * p.generator(a, -1) * p.generator(b, -1);
}
}  // namespace detail

/// Generators A0..A{k-1}, A'1, B'1, ..., A's, B's with the single relation
/// prod [A'i, B'i] * A{k-1} ... A0 = 1.
inline GroupPresentation surface_group(int s, int k) {
  check_surface(s, k);
  GroupPresentation out{s, k, {}};
  Presentation& p = out.group;
  for (int j = 0; j < k; ++j) p.generators.push_back(boundary_label('A', j));
  for (int i = 1; i <= s; ++i) {
    p.generators.push_back(handle_label('A', 1, i));
    p.generators.push_back(handle_label('B', 1, i));
  }
  Word r = p.identity();
  for (int i = 1; i <= s; ++i) {
    r = r * detail::commutator(p, handle_label('A', 1, i), handle_label('B', 1, i));
  }
  for (int j = k - 1; j >= 0; --j) r = r * p.generator(boundary_label('A', j));
  p.relators.push_back(r);
  return out;
}

/// Generators A1, B1, ..., A{k-1}, B{k-1}, A'i, B'i, A''i, B''i with the
/// relation
///   prod_{i=s..1} [A''i, B''i] prod_{i=1..s} [A'i, B'i]
///     * A{k-1} ... A1 * prod_{j=1..k-1} Bj Aj^-1 Bj^-1 = 1
/// and the involution Bj -> Bj^-1, Aj -> Bj Aj Bj^-1, A'i <-> B''i,
/// B'i <-> A''i.
inline DoubledPresentation double_group(int s, int k) {
  check_surface(s, k);
  DoubledPresentation out{s, k, 2 * s + k - 1, {}};
  Presentation& p = out.group;
  for (int j = 1; j < k; ++j) {
    p.generators.push_back(boundary_label('A', j));
    p.generators.push_back(boundary_label('B', j));
  }
  for (int i = 1; i <= s; ++i) {
    p.generators.push_back(handle_label('A', 1, i));
    p.generators.push_back(handle_label('B', 1, i));
  }
  for (int i = 1; i <= s; ++i) {
    p.generators.push_back(handle_label('A', 2, i));
    p.generators.push_back(handle_label('B', 2, i));
  }

  Word r = p.identity();
  for (int i = s; i >= 1; --i) {
    r = r * detail::commutator(p, handle_label('A', 2, i), handle_label('B', 2, i));
  }
  for (int i = 1; i <= s; ++i) {
    r = r * detail::commutator(p, handle_label('A', 1, i), handle_label('B', 1, i));
  }
  for (int j = k - 1; j >= 1; --j) r = r * p.generator(boundary_label('A', j));
  for (int j = 1; j < k; ++j) {
    const std::string a = boundary_label('A', j);
    const std::string b = boundary_label('B', j);
    r = r * p.generator(b) * p.generator(a, -1) * p.generator(b, -1);
  }
  p.relators.push_back(r);

  std::vector<Word> tau(static_cast<std::size_t>(p.rank()), p.identity());
  auto set = [&](const std::string& g, const Word& w) {
    tau[static_cast<std::size_t>(p.index_of(g))] = w;
  };
  for (int j = 1; j < k; ++j) {
    const std::string a = boundary_label('A', j);
    const std::string b = boundary_label('B', j);
    set(b, p.generator(b, -1));
    set(a, p.generator(b) * p.generator(a) * p.generator(b, -1));
  }
  for (int i = 1; i <= s; ++i) {
    set(handle_label('A', 1, i), p.generator(handle_label('B', 2, i)));
    set(handle_label('B', 1, i), p.generator(handle_label('A', 2, i)));
    set(handle_label('A', 2, i), p.generator(handle_label('B', 1, i)));
    set(handle_label('B', 2, i), p.generator(handle_label('A', 1, i)));
  }
  p.tau = std::move(tau);
  return out;
}

inline Word apply_involution(const DoubledPresentation& p, const Word& w) {
  return apply_involution(p.group, w);
}

/// Image in pi1(X) of a generator of pi1(S) (indexed as in surface_group).
inline Word surface_generator_in_double(const DoubledPresentation& p, int surface_gen) {
  const int k = p.k;
  if (surface_gen < 0 || surface_gen >= k + 2 * p.s) {
    throw word_error("surface generator index out of range");
  }
  if (surface_gen == 0) return p.boundary_loop(0);
  if (surface_gen < k) return p.group.generator(boundary_label('A', surface_gen));
  const int h = surface_gen - k;
  return p.group.generator(handle_label(h % 2 == 0 ? 'A' : 'B', 1, h / 2 + 1));
}

}  // namespace hardycover
