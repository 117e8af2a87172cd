#pragma once

#include <map>
#include <utility>

#include "bogofock/expr.hpp"
#include "bogofock/fock.hpp"
#include "bogofock/types.hpp"

namespace bogofock {

/// Double-graded raw-function container. Entry (N, L) is a dense pointwise
/// array over (1..modes)^(N+L); the first N slots are particle slots, the
/// trailing L slots are formally summed out. Two containers describe the
/// same state when they agree after the rewrite rules of `canonicalize`:
/// trailing slots may be permuted and flagged trailing sums executed.
struct ExtendedVector {
  int modes = 0;
  int bound = 0;  // max N + L kept
  bool lossy = false;

  struct Entry {
    Vector values;         // row-major over (1..modes)^(N+L), first slot slowest
    bool summable = true;  // trailing sums flagged executable
  };
  std::map<std::pair<int, int>, Entry> entries;

  static ExtendedVector zero(int modes, int bound);

  /// Largest N + L carrying a nonzero entry, or -1 when zero.
  int top_degree() const;
};

ExtendedVector operator+(const ExtendedVector& a, const ExtendedVector& b);
ExtendedVector operator-(const ExtendedVector& a, const ExtendedVector& b);
ExtendedVector operator*(const Complex& c, const ExtendedVector& a);

double max_abs(const ExtendedVector& v);

enum class CanonicalPolicy { execute_all, execute_marked };

/// Sector (N, 0) carries the pointwise sectors of psi; all L >= 1 empty.
ExtendedVector embed_fock(const FockVector& psi);

/// Canonical form: the trailing L slots of every entry are symmetrized
/// (canonical representative of the permutation orbit), and trailing sums
/// are executed into the (N, 0) entry -- for every entry under execute_all,
/// for flagged entries under execute_marked. At finite modes every such sum
/// is finite, hence absolutely convergent. Idempotent per policy.
ExtendedVector canonicalize(const ExtendedVector& v, CanonicalPolicy policy);

/// Equality of the described states: canonicalize both and compare entrywise.
bool ext_equal(const ExtendedVector& a, const ExtendedVector& b, CanonicalPolicy policy,
               double tol = 1e-12);

/// Creation acts on the first N slots only and leaves L unchanged. Entries
/// pushed above the bound are dropped and flagged lossy.
ExtendedVector ext_create(const Vector& phi, const ExtendedVector& v);

/// Annihilation exposes one fresh trailing slot: entry (N+1, L) feeds
/// (N, L+1) via pointwise multiplication by conj(phi) in the freed slot.
/// It never sums and never truncates; the result has no (N, 0) entries.
ExtendedVector ext_annihilate(const Vector& phi, const ExtendedVector& v);

/// Max-norm of ([a(phi), a+(psi)] - <phi,psi>) probe after canonicalization,
/// together with the two vanishing commutators. The probe must keep one
/// degree of headroom below the bound.
double ext_commutator_check(const Vector& phi, const Vector& psi, const ExtendedVector& probe);

/// Graded algebra product: degree-(N, L) output collects tensor products of
/// entries with N1 + N2 = N, L1 + L2 = L. Overflow beyond the bound is
/// dropped and flagged lossy.
ExtendedVector ext_tensor(const ExtendedVector& a, const ExtendedVector& b);

/// A formal sum over the mode index j: either an explicit finitely
/// supported sequence or a symbolic term over j with bound parameters.
struct Ren1Element {
  Vector values;          // explicit finite support (ignored when formula set)
  expr::ExprPtr formula;  // symbolic term over j, or null
  std::map<std::string, double> params;

  bool symbolic() const { return formula != nullptr; }

  static Ren1Element explicit_values(Vector v);
  static Ren1Element from_formula(expr::ExprPtr f, std::map<std::string, double> params = {});
};

enum class Ternary { yes, no, undecidable };

/// Decides whether two formal sums agree, i.e. whether their difference
/// sums absolutely to zero. Decidable for finite-support differences and
/// for syntactically certified closed forms (delta terms, geometric series
/// with |q| < 1, telescoping differences of certified null sequences);
/// everything else is reported undecidable rather than guessed.
Ternary ren1_equal(const Ren1Element& a, const Ren1Element& b, double tol = 1e-12);

}  // namespace bogofock
