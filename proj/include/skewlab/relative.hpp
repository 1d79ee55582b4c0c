#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "skewlab/rational.hpp"
#include "skewlab/skew_product.hpp"
#include "skewlab/step_function.hpp"

namespace skew {

// E(f | X): the fiberwise ν-average of f.
StepFunctionX cond_exp(const StepFunctionZ& f);

// ‖E(T^n f · g | X) − T0^n (E(f|X) E(g|X))‖²_{L²(X)}.
Rational mixing_defect_sq(const SkewProduct& t, const StepFunctionZ& f, const StepFunctionZ& g,
                          long n);
// ‖E(T^n f · g | X) − E(T0^n f · g | X)‖²_{L²(X)} with T0 acting as T0 × 1_Y.
Rational rigidity_defect_sq(const SkewProduct& t, const StepFunctionZ& f, const StepFunctionZ& g,
                            long n);

enum class DefectKind { mixing, rigidity };

std::string to_string(DefectKind kind);

struct DefectEntry {
  long n = 0;
  Rational defect_sq;
  friend bool operator==(const DefectEntry&, const DefectEntry&) = default;
};

// Exact defect sequence n ↦ defect², sorted by n.
struct DefectReport {
  DefectKind kind = DefectKind::mixing;
  std::vector<DefectEntry> entries;

  // The n with defect² ≤ tol²; with tol = 0 the exact zeros.
  std::vector<long> times_within(const Rational& tol = Rational(0)) const;
};

// Defects for n = 1 … n_max, powers built incrementally.
DefectReport defect_scan(DefectKind kind, const SkewProduct& t, const StepFunctionZ& f,
                         const StepFunctionZ& g, long n_max);

// Membership of T in P'_k and M'_k for A = X × [0, 1/2).
struct CategoryRow {
  long k = 0;
  bool in_p = false;
  bool in_m = false;
  Rational mu_tka_cap_a;  // μ(T^k A ∩ A)
  Rational defect_sq;     // ‖E(T^k χ_A · χ_A | X) − 1/4‖²
};

CategoryRow category_predicates(const SkewProduct& t, long k);
// Rows for k = 1 … k_max.
std::vector<CategoryRow> category_sweep(const SkewProduct& t, long k_max);

inline const Rational kPThreshold{9, 20};     // μ(T^k A ∩ A) > 9/20
inline const Rational kMThresholdSq{1, 25};   // (1/5)²

// All rank-K rectangle indicators χ_{E_i × F_j}, member index i·p^K + j.
class DenseFamily {
public:
  DenseFamily(int p, int rank);

  int p() const { return p_; }
  int rank() const { return rank_; }
  std::size_t size() const { return members_.size(); }
  const StepFunctionZ& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<StepFunctionZ>& members() const { return members_; }

private:
  int p_;
  int rank_;
  std::vector<StepFunctionZ> members_;
};

DenseFamily dense_family(int p, int rank);

// rigidity_defect_sq(T, f_i, f_j, n) < 1/k².
bool in_u(const SkewProduct& t, const DenseFamily& family, std::size_t i, std::size_t j, long k,
          long n);

// All n ≤ n_max whose rigidity defect is ≤ tol² for every member pair.
std::vector<long> certify_relative_rigidity(const SkewProduct& t, const DenseFamily& family,
                                            long n_max, const Rational& tol = Rational(0));

struct BoundCheck {
  Rational lhs_sq;  // ‖E(g h | X)‖²_{L²(X)}
  Rational rhs_sq;  // sup_x E(g² | X)(x) · ‖h‖²_{L²(Z)}
  bool holds() const { return lhs_sq <= rhs_sq; }
};

BoundCheck cond_exp_bound_check(const StepFunctionZ& g, const StepFunctionZ& h);

// E(χ_A | X) ≡ 1/2. Throws DomainError on a non-indicator.
bool is_half_fiber_set(const StepFunctionZ& a);

// E((S⁻¹TS)^n f · f | X) = E(T^n χ_A · χ_A | X) with f = S⁻¹ χ_A.
bool transport_check(const SkewProduct& t, const SkewProduct& s, const StepFunctionZ& a, long n);

}  // namespace skew
