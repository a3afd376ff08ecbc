#pragma once

#include <cstddef>
#include <deque>
#include <numeric>
#include <string>
#include <vector>

#include "hardycover/errors.hpp"
#include "hardycover/presentation.hpp"
#include "hardycover/word.hpp"

namespace hardycover {

/// Sheets are numbered 0..n-1; sheet 0 is the base sheet (coset of the
/// identity). External formats use 1-based numbering.
using Sheet = std::size_t;

/// A bijection of {0..n-1}, applied as i -> images[i].
struct SheetPermutation {
  std::vector<Sheet> images;

  static SheetPermutation identity(std::size_t n) {
    SheetPermutation p;
    p.images.resize(n);
    std::iota(p.images.begin(), p.images.end(), Sheet{0});
    return p;
  }

  /// k-cycle 0 -> 1 -> ... -> n-1 -> 0 raised to the power e.
  static SheetPermutation cycle(std::size_t n, long e = 1) {
    SheetPermutation p;
    p.images.resize(n);
    const long nn = static_cast<long>(n);
    for (std::size_t i = 0; i < n; ++i) {
      p.images[i] = static_cast<Sheet>(((static_cast<long>(i) + e) % nn + nn) % nn);
    }
    return p;
  }

  std::size_t size() const { return images.size(); }
  Sheet operator()(Sheet i) const { return images[i]; }

  bool is_bijection() const {
    std::vector<bool> seen(images.size(), false);
    for (Sheet s : images) {
      if (s >= images.size() || seen[s]) return false;
      seen[s] = true;
    }
    return true;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i] != i) return false;
    }
    return true;
  }

  SheetPermutation inverse() const {
    SheetPermutation p;
    p.images.resize(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) p.images[images[i]] = i;
    return p;
  }

  /// Apply this first, then `next`.
  SheetPermutation then(const SheetPermutation& next) const {
    SheetPermutation p;
    p.images.resize(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) p.images[i] = next(images[i]);
    return p;
  }

  friend bool operator==(const SheetPermutation&, const SheetPermutation&) = default;
};

/// A finite unramified covering encoded as a transitive right action of the
/// group on sheets: sheet i moves to i.x under generator x.
class CoveringAction {
 public:
  const Presentation& presentation() const { return pres_; }
  std::size_t sheets() const { return n_; }
  const SheetPermutation& perm(int gen) const { return perms_[static_cast<std::size_t>(gen)]; }
  const std::vector<SheetPermutation>& perms() const { return perms_; }

  Sheet act(Sheet i, const Letter& l) const {
    const std::size_t g = static_cast<std::size_t>(l.gen);
    return l.exp > 0 ? perms_[g](i) : inverse_[g](i);
  }

  Sheet act(Sheet i, const Word& w) const {
    pres_.check_word(w);
    for (const Letter& l : w) i = act(i, l);
    return i;
  }

 private:
  friend CoveringAction build_covering(Presentation, std::vector<SheetPermutation>);

  Presentation pres_;
  std::size_t n_ = 1;
  std::vector<SheetPermutation> perms_;
  std::vector<SheetPermutation> inverse_;
};

/// Validates and packages a permutation action. Throws covering_error when
/// the action is not transitive or a relator acts nontrivially.
inline CoveringAction build_covering(Presentation p, std::vector<SheetPermutation> perms) {
  if (static_cast<int>(perms.size()) != p.rank()) {
    throw covering_error("expected one permutation per generator (" + std::to_string(p.rank()) +
                         "), got " + std::to_string(perms.size()));
  }
  std::size_t n = perms.empty() ? 1 : perms.front().size();
  for (std::size_t g = 0; g < perms.size(); ++g) {
    if (perms[g].size() != n || n == 0) {
      throw covering_error("permutation of " + p.generators[g] + " has the wrong degree");
    }
    if (!perms[g].is_bijection()) {
      throw covering_error("image list of " + p.generators[g] + " is not a permutation");
    }
  }

  CoveringAction c;
  c.n_ = n;
  c.perms_ = std::move(perms);
  for (const auto& q : c.perms_) c.inverse_.push_back(q.inverse());
  c.pres_ = std::move(p);

  std::vector<bool> seen(n, false);
  std::deque<Sheet> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const Sheet i = queue.front();
    queue.pop_front();
    for (const auto& q : c.perms_) {
      if (!seen[q(i)]) {
        seen[q(i)] = true;
        ++reached;
        queue.push_back(q(i));
      }
    }
  }
  if (reached != n) throw covering_error("disconnected cover: action is not transitive");

  for (const Word& r : c.pres_.relators) {
    for (Sheet i = 0; i < n; ++i) {
      if (c.act(i, r) != i) {
        throw covering_error("not a covering of this surface: relator " + c.pres_.format(r) +
                             " moves sheet " + std::to_string(i + 1));
      }
    }
  }
  return c;
}

/// Coset representatives from a breadth-first spanning tree of the coset
/// graph, plus one Schreier generator per non-tree edge.
struct Transversal {
  std::vector<Word> reps;
  std::vector<Word> schreier_gens;
  std::vector<std::string> schreier_names;
  /// edge_gen[i][x] is the Schreier generator on edge (i, x), or -1 for a
  /// tree edge.
  std::vector<std::vector<int>> edge_gen;

  int subgroup_rank() const { return static_cast<int>(schreier_gens.size()); }
};

inline Transversal schreier_transversal(const CoveringAction& c) {
  const std::size_t n = c.sheets();
  const Presentation& p = c.presentation();
  const int rank = p.rank();

  Transversal t;
  t.reps.assign(n, p.identity());
  t.edge_gen.assign(n, std::vector<int>(static_cast<std::size_t>(rank), -1));
  std::vector<std::vector<bool>> tree(n, std::vector<bool>(static_cast<std::size_t>(rank), false));
  std::vector<bool> seen(n, false);
  seen[0] = true;
  std::deque<Sheet> queue{0};
  while (!queue.empty()) {
    const Sheet i = queue.front();
    queue.pop_front();
    for (int x = 0; x < rank; ++x) {
      const Sheet j = c.perm(x)(i);
      if (!seen[j]) {
        seen[j] = true;
        tree[i][static_cast<std::size_t>(x)] = true;
        t.reps[j] = t.reps[i] * p.generator(x);
        queue.push_back(j);
      }
    }
  }

  for (Sheet i = 0; i < n; ++i) {
    for (int x = 0; x < rank; ++x) {
      if (tree[i][static_cast<std::size_t>(x)]) continue;
      const Sheet j = c.perm(x)(i);
      t.edge_gen[i][static_cast<std::size_t>(x)] = static_cast<int>(t.schreier_gens.size());
      t.schreier_gens.push_back(t.reps[i] * p.generator(x) * invert(t.reps[j]));
      t.schreier_names.push_back("s" + std::to_string(i + 1) + "_" +
                                 p.generators[static_cast<std::size_t>(x)]);
    }
  }
  return t;
}

/// Sheet reached from the base sheet along w, i.e. the right coset H w.
inline Sheet coset_of(const CoveringAction& c, const Word& w) { return c.act(Sheet{0}, w); }

/// The permutation i -> i.w. Satisfies sigma(g'' g') = sigma(g'') then sigma(g').
inline SheetPermutation sigma(const CoveringAction& c, const Word& w) {
  c.presentation().check_word(w);
  SheetPermutation p;
  p.images.resize(c.sheets());
  for (Sheet i = 0; i < c.sheets(); ++i) p.images[i] = c.act(i, w);
  return p;
}

struct Factorization {
  Word h;
  Sheet sheet;
};

/// g_k g = h g_j with j = sigma_g(k) and h in the subgroup.
inline Factorization factorize(const CoveringAction& c, const Transversal& t, Sheet k,
                               const Word& g) {
  if (k >= c.sheets()) throw covering_error("sheet index out of range");
  const Sheet j = c.act(k, g);
  return {t.reps[k] * g * invert(t.reps[j]), j};
}

/// Rewrites a subgroup element as a word in the Schreier generators.
inline Word schreier_rewrite(const CoveringAction& c, const Transversal& t, const Word& w) {
  c.presentation().check_word(w);
  std::vector<Letter> out;
  Sheet cur = 0;
  for (const Letter& l : w) {
    const std::size_t x = static_cast<std::size_t>(l.gen);
    if (l.exp > 0) {
      if (const int s = t.edge_gen[cur][x]; s >= 0) out.push_back({s, 1});
      cur = c.act(cur, l);
    } else {
      const Sheet prev = c.act(cur, l);
      if (const int s = t.edge_gen[prev][x]; s >= 0) out.push_back({s, -1});
      cur = prev;
    }
  }
  if (cur != 0) {
    throw subgroup_error("not a subgroup element: " + c.presentation().format(w) +
                         " ends on sheet " + std::to_string(cur + 1));
  }
  return Word(t.subgroup_rank(), out);
}

/// Substitutes each Schreier generator by its defining word.
inline Word expand_schreier(const Transversal& t, const Word& w, int ambient_rank) {
  if (w.rank() != t.subgroup_rank()) throw word_error("word is not over the Schreier generators");
  Word out(ambient_rank);
  for (const Letter& l : w) {
    const Word& s = t.schreier_gens[static_cast<std::size_t>(l.gen)];
    out = out * (l.exp > 0 ? s : invert(s));
  }
  return out;
}

/// Rewritten conjugates g_i r g_i^-1 of every relator.
inline std::vector<Word> subgroup_relators(const CoveringAction& c, const Transversal& t) {
  std::vector<Word> out;
  for (const Word& r : c.presentation().relators) {
    for (Sheet i = 0; i < c.sheets(); ++i) {
      out.push_back(schreier_rewrite(c, t, t.reps[i] * r * invert(t.reps[i])));
    }
  }
  return out;
}

struct NuDecomposition {
  /// g_k^tau = h[k] g_{nu[k]}
  std::vector<Word> h;
  std::vector<Sheet> nu;
};

/// Tracks each representative through the involution. Throws covering_error
/// when nu fails to be a permutation, which can only happen when the
/// subgroup is not stable under the involution.
inline NuDecomposition nu_decompose(const CoveringAction& c, const Transversal& t) {
  const Presentation& p = c.presentation();
  if (!p.tau) throw covering_error("the covered group carries no involution");
  NuDecomposition out;
  std::vector<bool> hit(c.sheets(), false);
  for (Sheet k = 0; k < c.sheets(); ++k) {
    const Word gt = apply_involution(p, t.reps[k]);
    const Sheet j = coset_of(c, gt);
    if (hit[j]) {
      throw covering_error("involution does not preserve the subgroup: nu is not injective");
    }
    hit[j] = true;
    out.nu.push_back(j);
    out.h.push_back(gt * invert(t.reps[j]));
  }
  return out;
}

/// Whether the involution maps the subgroup into itself.
inline bool subgroup_is_tau_stable(const CoveringAction& c, const Transversal& t) {
  if (!c.presentation().tau) return false;
  for (const Word& s : t.schreier_gens) {
    if (coset_of(c, apply_involution(c.presentation(), s)) != 0) return false;
  }
  return true;
}

/// Reidemeister-Schreier presentation of the subgroup. When the covered group
/// has an involution preserving the subgroup, its restriction is attached.
inline Presentation subgroup_presentation(const CoveringAction& c, const Transversal& t) {
  Presentation h;
  h.generators = t.schreier_names;
  h.relators = subgroup_relators(c, t);
  if (subgroup_is_tau_stable(c, t)) {
    std::vector<Word> tau;
    for (const Word& s : t.schreier_gens) {
      tau.push_back(schreier_rewrite(c, t, apply_involution(c.presentation(), s)));
    }
    h.tau = std::move(tau);
  }
  return h;
}

/// Composite covering for a tower: `upper` is a covering of the subgroup
/// presentation attached to (lower, t). Sheet (i, a) is numbered i + n1 * a.
inline CoveringAction compose_coverings(const CoveringAction& lower, const Transversal& t,
                                        const CoveringAction& upper) {
  if (upper.presentation().rank() != t.subgroup_rank()) {
    throw covering_error("upper covering is not over the subgroup presentation");
  }
  const std::size_t n1 = lower.sheets();
  const std::size_t n2 = upper.sheets();
  const Presentation& p = lower.presentation();
  std::vector<SheetPermutation> perms;
  for (int x = 0; x < p.rank(); ++x) {
    SheetPermutation q;
    q.images.resize(n1 * n2);
    for (Sheet i = 0; i < n1; ++i) {
      const auto f = factorize(lower, t, i, p.generator(x));
      const Word h = schreier_rewrite(lower, t, f.h);
      for (Sheet a = 0; a < n2; ++a) q.images[i + n1 * a] = f.sheet + n1 * upper.act(a, h);
    }
    perms.push_back(std::move(q));
  }
  return build_covering(p, std::move(perms));
}

}  // namespace hardycover
