#include "bogofock/extended.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bogofock {

namespace {

using Key = std::pair<int, int>;

std::vector<int> decode_tuple(Eigen::Index idx, int modes, int slots) {
  std::vector<int> tuple(static_cast<std::size_t>(slots), 1);
  for (int i = slots - 1; i >= 0; --i) {
    tuple[static_cast<std::size_t>(i)] = static_cast<int>(idx % modes) + 1;
    idx /= modes;
  }
  return tuple;
}

void merge_entry(ExtendedVector& out, const Key& key, const Vector& values, bool summable) {
  auto it = out.entries.find(key);
  if (it == out.entries.end()) {
    out.entries.emplace(key, ExtendedVector::Entry{values, summable});
  } else {
    it->second.values += values;
    it->second.summable = it->second.summable && summable;
  }
}

void drop_zero_entries(ExtendedVector& v) {
  for (auto it = v.entries.begin(); it != v.entries.end();) {
    if (it->second.values.size() == 0 || it->second.values.cwiseAbs().maxCoeff() == 0.0)
      it = v.entries.erase(it);
    else
      ++it;
  }
}

/// Symmetrize the trailing L slots of a raw (N+L)-slot array. A slot whose
/// value already equals its orbit average is passed through bitwise
/// unchanged, which makes the projection exactly idempotent.
Vector symmetrize_trailing(const Vector& values, int modes, int n, int l) {
  if (l <= 1) return values;
  const Eigen::Index block = pointwise_size(modes, l);
  const Eigen::Index blocks = values.size() / block;
  std::vector<std::vector<int>> sorted_keys(static_cast<std::size_t>(block));
  for (Eigen::Index t = 0; t < block; ++t) {
    std::vector<int> key = decode_tuple(t, modes, l);
    std::sort(key.begin(), key.end());
    sorted_keys[static_cast<std::size_t>(t)] = std::move(key);
  }
  Vector out(values.size());
  std::map<std::vector<int>, std::pair<Complex, std::int64_t>> orbit;
  for (Eigen::Index b = 0; b < blocks; ++b) {
    orbit.clear();
    for (Eigen::Index t = 0; t < block; ++t) {
      auto& slot = orbit[sorted_keys[static_cast<std::size_t>(t)]];
      slot.first += values(b * block + t);
      slot.second += 1;
    }
    for (Eigen::Index t = 0; t < block; ++t) {
      const auto& slot = orbit[sorted_keys[static_cast<std::size_t>(t)]];
      const Complex value = values(b * block + t);
      out(b * block + t) = value * double(slot.second) == slot.first ? value : slot.first / double(slot.second);
    }
  }
  return out;
}

Vector sum_trailing(const Vector& values, int modes, int n, int l) {
  const Eigen::Index block = pointwise_size(modes, l);
  const Eigen::Index out_size = pointwise_size(modes, n);
  Vector out(out_size);
  for (Eigen::Index q = 0; q < out_size; ++q) out(q) = values.segment(q * block, block).sum();
  return out;
}

}  // namespace

ExtendedVector ExtendedVector::zero(int modes, int bound) {
  if (modes < 1 || bound < 0) throw std::invalid_argument("ExtendedVector: modes >= 1, bound >= 0 required");
  ExtendedVector out;
  out.modes = modes;
  out.bound = bound;
  return out;
}

int ExtendedVector::top_degree() const {
  int top = -1;
  for (const auto& [key, entry] : entries)
    if (entry.values.cwiseAbs().maxCoeff() > 0.0) top = std::max(top, key.first + key.second);
  return top;
}

ExtendedVector operator+(const ExtendedVector& a, const ExtendedVector& b) {
  if (a.modes != b.modes || a.bound != b.bound)
    throw std::invalid_argument("ExtendedVector operator+: shape mismatch");
  ExtendedVector out = a;
  out.lossy = a.lossy || b.lossy;
  for (const auto& [key, entry] : b.entries) merge_entry(out, key, entry.values, entry.summable);
  return out;
}

ExtendedVector operator-(const ExtendedVector& a, const ExtendedVector& b) {
  return a + (Complex(-1.0, 0.0) * b);
}

ExtendedVector operator*(const Complex& c, const ExtendedVector& a) {
  ExtendedVector out = a;
  for (auto& [key, entry] : out.entries) entry.values *= c;
  return out;
}

double max_abs(const ExtendedVector& v) {
  double out = 0.0;
  for (const auto& [key, entry] : v.entries)
    if (entry.values.size() > 0) out = std::max(out, entry.values.cwiseAbs().maxCoeff());
  return out;
}

ExtendedVector embed_fock(const FockVector& psi) {
  ExtendedVector out = ExtendedVector::zero(psi.modes, psi.nmax);
  out.lossy = psi.lossy;
  for (int n = 0; n <= psi.nmax; ++n) {
    if (psi.sector(n).cwiseAbs().maxCoeff() == 0.0) continue;
    out.entries.emplace(Key{n, 0}, ExtendedVector::Entry{to_pointwise(psi, n).values, true});
  }
  return out;
}

ExtendedVector canonicalize(const ExtendedVector& v, CanonicalPolicy policy) {
  ExtendedVector out = ExtendedVector::zero(v.modes, v.bound);
  out.lossy = v.lossy;
  for (const auto& [key, entry] : v.entries) {
    const auto [n, l] = key;
    if (l == 0) {
      merge_entry(out, key, entry.values, true);
      continue;
    }
    if (policy == CanonicalPolicy::execute_all || entry.summable) {
      merge_entry(out, Key{n, 0}, sum_trailing(entry.values, v.modes, n, l), true);
    } else {
      merge_entry(out, key, symmetrize_trailing(entry.values, v.modes, n, l), false);
    }
  }
  drop_zero_entries(out);
  return out;
}

bool ext_equal(const ExtendedVector& a, const ExtendedVector& b, CanonicalPolicy policy, double tol) {
  if (a.modes != b.modes || a.bound != b.bound)
    throw std::invalid_argument("ext_equal: shape mismatch");
  const ExtendedVector ca = canonicalize(a, policy);
  const ExtendedVector cb = canonicalize(b, policy);
  return max_abs(ca - cb) <= tol;
}

ExtendedVector ext_create(const Vector& phi, const ExtendedVector& v) {
  if (phi.size() != v.modes) throw std::invalid_argument("ext_create: phi dimension mismatch");
  ExtendedVector out = ExtendedVector::zero(v.modes, v.bound);
  out.lossy = v.lossy;
  const int m = v.modes;
  for (const auto& [key, entry] : v.entries) {
    const auto [n, l] = key;
    if (n + l + 1 > v.bound) {
      if (entry.values.cwiseAbs().maxCoeff() > 0.0 && phi.cwiseAbs().maxCoeff() > 0.0) out.lossy = true;
      continue;
    }
    const double weight = 1.0 / std::sqrt(double(n + 1));
    Vector target = Vector::Zero(pointwise_size(m, n + 1 + l));
    for (Eigen::Index idx = 0; idx < target.size(); ++idx) {
      std::vector<int> tuple = decode_tuple(idx, m, n + 1 + l);
      Complex acc(0.0, 0.0);
      for (int slot = 0; slot < n + 1; ++slot) {
        const Complex factor = phi(tuple[static_cast<std::size_t>(slot)] - 1);
        if (factor == Complex(0.0, 0.0)) continue;
        std::vector<int> reduced;
        reduced.reserve(tuple.size() - 1);
        for (int s = 0; s < n + 1 + l; ++s)
          if (s != slot) reduced.push_back(tuple[static_cast<std::size_t>(s)]);
        acc += factor * entry.values(pointwise_index(reduced, m));
      }
      target(idx) = weight * acc;
    }
    merge_entry(out, Key{n + 1, l}, target, entry.summable);
  }
  drop_zero_entries(out);
  return out;
}

ExtendedVector ext_annihilate(const Vector& phi, const ExtendedVector& v) {
  if (phi.size() != v.modes) throw std::invalid_argument("ext_annihilate: phi dimension mismatch");
  ExtendedVector out = ExtendedVector::zero(v.modes, v.bound);
  out.lossy = v.lossy;
  const int m = v.modes;
  for (const auto& [key, entry] : v.entries) {
    const auto [n, l] = key;
    if (n == 0) continue;  // the pure trailing part is annihilated to zero
    // The raw array keeps its shape; slot n (1-based) moves from the particle
    // group to the trailing group.
    const double weight = std::sqrt(double(n));
    const Eigen::Index tail = pointwise_size(m, l);        // strides below the freed slot
    const Eigen::Index lead = entry.values.size() / (tail * m);
    Vector target(entry.values.size());
    for (Eigen::Index a = 0; a < lead; ++a)
      for (int j = 0; j < m; ++j) {
        const Complex factor = weight * std::conj(phi(j));
        target.segment((a * m + j) * tail, tail) = factor * entry.values.segment((a * m + j) * tail, tail);
      }
    merge_entry(out, Key{n - 1, l + 1}, target, entry.summable);
  }
  drop_zero_entries(out);
  return out;
}

double ext_commutator_check(const Vector& phi, const Vector& psi, const ExtendedVector& probe) {
  if (probe.top_degree() > probe.bound - 1)
    throw std::invalid_argument("ext_commutator_check: probe needs one degree of headroom");
  const Complex pairing = phi.dot(psi);
  const ExtendedVector mixed =
      ext_annihilate(phi, ext_create(psi, probe)) - ext_create(psi, ext_annihilate(phi, probe)) -
      pairing * probe;
  const ExtendedVector ann =
      ext_annihilate(phi, ext_annihilate(psi, probe)) - ext_annihilate(psi, ext_annihilate(phi, probe));
  const ExtendedVector cre =
      ext_create(phi, ext_create(psi, probe)) - ext_create(psi, ext_create(phi, probe));
  const auto residual = [](const ExtendedVector& r) {
    return max_abs(canonicalize(r, CanonicalPolicy::execute_all));
  };
  return std::max({residual(mixed), residual(ann), residual(cre)});
}

ExtendedVector ext_tensor(const ExtendedVector& a, const ExtendedVector& b) {
  if (a.modes != b.modes) throw std::invalid_argument("ext_tensor: modes mismatch");
  ExtendedVector out = ExtendedVector::zero(a.modes, std::max(a.bound, b.bound));
  out.lossy = a.lossy || b.lossy;
  const int m = a.modes;
  for (const auto& [ka, ea] : a.entries)
    for (const auto& [kb, eb] : b.entries) {
      const int n = ka.first + kb.first;
      const int l = ka.second + kb.second;
      if (n + l > out.bound) {
        if (ea.values.cwiseAbs().maxCoeff() > 0.0 && eb.values.cwiseAbs().maxCoeff() > 0.0)
          out.lossy = true;
        continue;
      }
      // Slot layout: particle slots of a then of b; trailing slots of a then of b.
      Vector target = Vector::Zero(pointwise_size(m, n + l));
      for (Eigen::Index idx = 0; idx < target.size(); ++idx) {
        std::vector<int> tuple = decode_tuple(idx, m, n + l);
        std::vector<int> ta, tb;
        ta.reserve(static_cast<std::size_t>(ka.first + ka.second));
        tb.reserve(static_cast<std::size_t>(kb.first + kb.second));
        ta.insert(ta.end(), tuple.begin(), tuple.begin() + ka.first);
        tb.insert(tb.end(), tuple.begin() + ka.first, tuple.begin() + n);
        ta.insert(ta.end(), tuple.begin() + n, tuple.begin() + n + ka.second);
        tb.insert(tb.end(), tuple.begin() + n + ka.second, tuple.end());
        target(idx) = ea.values(pointwise_index(ta, m)) * eb.values(pointwise_index(tb, m));
      }
      merge_entry(out, Key{n, l}, target, ea.summable && eb.summable);
    }
  drop_zero_entries(out);
  return out;
}

// ---------------------------------------------------------------------------
// Ren_1 equality
// ---------------------------------------------------------------------------

namespace {

using expr::Expr;
using expr::ExprPtr;

bool contains_name(const ExprPtr& e, const std::string& name) {
  if (e->kind == Expr::Kind::name) return e->name == name;
  for (const auto& arg : e->args)
    if (contains_name(arg, name)) return true;
  return false;
}

/// Replace every bound parameter by its numeric value, so formulas from
/// different elements can be compared and summed under one empty binding.
ExprPtr resolve_params(const ExprPtr& e, const std::map<std::string, double>& params) {
  if (e->kind == Expr::Kind::name) {
    auto it = params.find(e->name);
    if (it == params.end()) return e;
    auto number = std::make_shared<Expr>();
    number->kind = Expr::Kind::number;
    number->number = it->second;
    number->pos = e->pos;
    return ExprPtr(number);
  }
  if (e->args.empty()) return e;
  auto out = std::make_shared<Expr>(*e);
  for (auto& arg : out->args) arg = resolve_params(arg, params);
  return out;
}

void flatten_sum(const ExprPtr& e, double sign, std::vector<std::pair<double, ExprPtr>>& terms) {
  if (e->kind == Expr::Kind::binary && (e->op == '+' || e->op == '-')) {
    flatten_sum(e->args[0], sign, terms);
    flatten_sum(e->args[1], e->op == '+' ? sign : -sign, terms);
    return;
  }
  if (e->kind == Expr::Kind::unary_minus) {
    flatten_sum(e->args[0], -sign, terms);
    return;
  }
  terms.emplace_back(sign, e);
}

void flatten_product(const ExprPtr& e, std::vector<ExprPtr>& factors) {
  if (e->kind == Expr::Kind::binary && e->op == '*') {
    flatten_product(e->args[0], factors);
    flatten_product(e->args[1], factors);
    return;
  }
  factors.push_back(e);
}

/// Kronecker factor delta(j, c) with an integer literal c, if present.
bool find_delta_pin(const ExprPtr& term, long& pin) {
  std::vector<ExprPtr> factors;
  flatten_product(term, factors);
  for (const auto& f : factors) {
    if (f->kind != Expr::Kind::call || f->name != "delta") continue;
    const ExprPtr& a = f->args[0];
    const ExprPtr& b = f->args[1];
    const ExprPtr* literal = nullptr;
    if (a->kind == Expr::Kind::name && a->name == "j" && b->kind == Expr::Kind::number)
      literal = &b;
    else if (b->kind == Expr::Kind::name && b->name == "j" && a->kind == Expr::Kind::number)
      literal = &a;
    if (!literal) continue;
    const double c = (*literal)->number;
    if (c < 1.0 || c != std::floor(c)) {
      pin = 0;  // pinned outside the index range; the term sums to zero
      return true;
    }
    pin = static_cast<long>(c);
    return true;
  }
  return false;
}

/// Geometric term c * q^j with constant factors and literal base.
bool match_geometric(const ExprPtr& term, const expr::Bindings& bindings, Complex& coefficient,
                     Complex& ratio) {
  std::vector<ExprPtr> factors;
  flatten_product(term, factors);
  const Expr* power = nullptr;
  Complex c(1.0, 0.0);
  for (const auto& f : factors) {
    if (f->kind == Expr::Kind::binary && f->op == '^' && f->args[1]->kind == Expr::Kind::name &&
        f->args[1]->name == "j" && !contains_name(f->args[0], "j")) {
      if (power) return false;  // a single exponential factor only
      power = f.get();
      continue;
    }
    if (contains_name(f, "j")) return false;
    c *= expr::eval(f, bindings);
  }
  if (!power) return false;
  coefficient = c;
  ratio = expr::eval(power->args[0], bindings);
  return true;
}

/// Certified null sequence g(j) with absolutely summable increments:
/// numeric multiples of 1/j^p (p >= 1) or q^j (|q| < 1).
bool is_certified_null(const ExprPtr& term, const expr::Bindings& bindings) {
  if (term->kind == Expr::Kind::unary_minus) return is_certified_null(term->args[0], bindings);
  Complex c, q;
  if (match_geometric(term, bindings, c, q)) return std::abs(q) < 1.0;
  std::vector<ExprPtr> factors;
  flatten_product(term, factors);
  int reciprocal_power_factors = 0;
  for (const auto& f : factors) {
    if (!contains_name(f, "j")) continue;
    const bool plain_recip = f->kind == Expr::Kind::call && f->name == "recip" &&
                             f->args[0]->kind == Expr::Kind::name && f->args[0]->name == "j";
    const bool recip_power = f->kind == Expr::Kind::call && f->name == "recip" &&
                             f->args[0]->kind == Expr::Kind::binary && f->args[0]->op == '^' &&
                             f->args[0]->args[0]->kind == Expr::Kind::name &&
                             f->args[0]->args[0]->name == "j" &&
                             f->args[0]->args[1]->kind == Expr::Kind::number &&
                             f->args[0]->args[1]->number >= 1.0;
    const bool div_form = f->kind == Expr::Kind::binary && f->op == '/' &&
                          !contains_name(f->args[0], "j") &&
                          ((f->args[1]->kind == Expr::Kind::name && f->args[1]->name == "j") ||
                           (f->args[1]->kind == Expr::Kind::binary && f->args[1]->op == '^' &&
                            f->args[1]->args[0]->kind == Expr::Kind::name &&
                            f->args[1]->args[0]->name == "j" &&
                            f->args[1]->args[1]->kind == Expr::Kind::number &&
                            f->args[1]->args[1]->number >= 1.0));
    const bool neg_power = f->kind == Expr::Kind::binary && f->op == '^' &&
                           f->args[0]->kind == Expr::Kind::name && f->args[0]->name == "j" &&
                           f->args[1]->kind == Expr::Kind::unary_minus &&
                           f->args[1]->args[0]->kind == Expr::Kind::number &&
                           f->args[1]->args[0]->number >= 1.0;
    if (plain_recip || recip_power || div_form || neg_power) {
      reciprocal_power_factors += 1;
      continue;
    }
    return false;
  }
  return reciprocal_power_factors >= 1;
}

enum class TermClass { finite, divergent, unknown };

}  // namespace

Ren1Element Ren1Element::explicit_values(Vector v) {
  Ren1Element out;
  out.values = std::move(v);
  return out;
}

Ren1Element Ren1Element::from_formula(expr::ExprPtr f, std::map<std::string, double> params) {
  Ren1Element out;
  out.formula = std::move(f);
  out.params = std::move(params);
  return out;
}

Ternary ren1_equal(const Ren1Element& a, const Ren1Element& b, double tol) {
  if (!a.symbolic() && !b.symbolic()) {
    Complex sum(0.0, 0.0);
    const Eigen::Index size = std::max(a.values.size(), b.values.size());
    for (Eigen::Index j = 0; j < size; ++j) {
      if (j < a.values.size()) sum += a.values(j);
      if (j < b.values.size()) sum -= b.values(j);
    }
    return std::abs(sum) <= tol ? Ternary::yes : Ternary::no;
  }

  if (a.symbolic() && b.symbolic() && a.params == b.params && expr::equal(a.formula, b.formula))
    return Ternary::yes;

  // Collect the symbolic difference terms plus the exact finite contribution
  // of any explicit side. Parameters are substituted per element, so equal
  // names bound to different values cannot collide.
  Complex finite_sum(0.0, 0.0);
  std::vector<std::pair<double, ExprPtr>> terms;
  expr::Bindings bindings;
  for (const auto* element : {&a, &b}) {
    const double sign = element == &a ? 1.0 : -1.0;
    if (element->symbolic()) {
      flatten_sum(resolve_params(element->formula, element->params), sign, terms);
    } else {
      finite_sum += sign * element->values.sum();
    }
  }

  // Pairwise telescoping: t and -t(j+1) collapse to the value at j = 1 when
  // t is a certified null sequence.
  const ExprPtr j_plus_one = expr::parse("j+1");
  std::vector<bool> consumed(terms.size(), false);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (consumed[i]) continue;
    const ExprPtr shifted = expr::substitute(terms[i].second, "j", j_plus_one);
    for (std::size_t l = 0; l < terms.size(); ++l) {
      if (l == i || consumed[l] || terms[l].first != -terms[i].first) continue;
      if (!expr::equal(shifted, terms[l].second)) continue;
      if (!is_certified_null(terms[i].second, bindings)) continue;
      expr::Bindings at_one = bindings;
      at_one.j = 1;
      finite_sum += terms[i].first * expr::eval(terms[i].second, at_one);
      consumed[i] = consumed[l] = true;
      break;
    }
  }

  int divergent_terms = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (consumed[i]) continue;
    const auto& [sign, term] = terms[i];
    TermClass klass = TermClass::unknown;
    long pin = 0;
    Complex coefficient, ratio;
    if (!contains_name(term, "j")) {
      bindings.j = 1;
      const Complex value = expr::eval(term, bindings);
      if (value == Complex(0.0, 0.0)) {
        klass = TermClass::finite;
      } else {
        klass = TermClass::divergent;  // a nonzero constant summed over all j
      }
    } else if (find_delta_pin(term, pin)) {
      klass = TermClass::finite;
      if (pin >= 1) {
        bindings.j = pin;
        finite_sum += sign * expr::eval(term, bindings);
      }
    } else if (match_geometric(term, bindings, coefficient, ratio)) {
      if (std::abs(ratio) < 1.0) {
        klass = TermClass::finite;
        finite_sum += sign * coefficient * ratio / (Complex(1.0, 0.0) - ratio);
      } else {
        klass = coefficient == Complex(0.0, 0.0) ? TermClass::finite : TermClass::divergent;
      }
    }
    if (klass == TermClass::unknown) return Ternary::undecidable;
    if (klass == TermClass::divergent) divergent_terms += 1;
  }

  if (divergent_terms >= 2) return Ternary::undecidable;  // divergences might cancel
  if (divergent_terms == 1) return Ternary::no;
  return std::abs(finite_sum) <= tol ? Ternary::yes : Ternary::no;
}

}  // namespace bogofock
