#include "skewlab/relative.hpp"

#include "skewlab/errors.hpp"

namespace skew {

StepFunctionX cond_exp(const StepFunctionZ& f) {
  const Index n = f.side();
  const Rational inv(mpz_class(1), mpz_class(static_cast<unsigned long>(n)));
  std::vector<Rational> out(n);
  for (Index i = 0; i < n; ++i) {
    Rational s;
    for (Index j = 0; j < n; ++j) s += f.at(i, j);
    out[i] = s * inv;
  }
  return StepFunctionX(f.p(), f.rank(), std::move(out));
}

namespace {

void require_nonnegative(long n) {
  if (n < 0) throw DomainError("defect index n must be >= 0");
}

// E(T^n f · g | X) given the power T^n.
StepFunctionX correlation(const SkewProduct& tn, const StepFunctionZ& f, const StepFunctionZ& g) {
  return cond_exp(koopman_pullback(tn, f) * g);
}

Rational mixing_from_power(const SkewProduct& tn, const StepFunctionZ& f, const StepFunctionZ& g) {
  const StepFunctionX product_of_means = cond_exp(f) * cond_exp(g);
  return (correlation(tn, f, g) - koopman_pullback(tn.base(), product_of_means)).l2_norm_sq();
}

Rational rigidity_from_power(const SkewProduct& tn, const StepFunctionZ& f, const StepFunctionZ& g) {
  const SkewProduct lifted = SkewProduct::lift(tn.base());
  return (correlation(tn, f, g) - correlation(lifted, f, g)).l2_norm_sq();
}

CategoryRow category_from_power(const SkewProduct& tk, long k) {
  const StepFunctionZ chi = StepFunctionZ::half_fiber(tk.p());
  const StepFunctionZ overlap = koopman_pullback(tk, chi) * chi;
  CategoryRow row;
  row.k = k;
  row.mu_tka_cap_a = overlap.integral();
  const StepFunctionX quarter = StepFunctionX::constant(tk.p(), 0, Rational(1, 4));
  row.defect_sq = (cond_exp(overlap) - quarter).l2_norm_sq();
  row.in_p = row.mu_tka_cap_a > kPThreshold;
  row.in_m = row.defect_sq <= kMThresholdSq;
  return row;
}

}  // namespace

Rational mixing_defect_sq(const SkewProduct& t, const StepFunctionZ& f, const StepFunctionZ& g,
                          long n) {
  require_nonnegative(n);
  return mixing_from_power(power(t, n), f, g);
}

Rational rigidity_defect_sq(const SkewProduct& t, const StepFunctionZ& f, const StepFunctionZ& g,
                            long n) {
  require_nonnegative(n);
  return rigidity_from_power(power(t, n), f, g);
}

std::string to_string(DefectKind kind) {
  return kind == DefectKind::mixing ? "mixing" : "rigidity";
}

std::vector<long> DefectReport::times_within(const Rational& tol) const {
  const Rational bound = tol * tol;
  std::vector<long> out;
  for (const auto& e : entries) {
    if (e.defect_sq <= bound) out.push_back(e.n);
  }
  return out;
}

DefectReport defect_scan(DefectKind kind, const SkewProduct& t, const StepFunctionZ& f,
                         const StepFunctionZ& g, long n_max) {
  DefectReport report;
  report.kind = kind;
  SkewProduct tn = SkewProduct::identity(t.p());
  for (long n = 1; n <= n_max; ++n) {
    tn = compose(t, tn);
    Rational d = kind == DefectKind::mixing ? mixing_from_power(tn, f, g)
                                            : rigidity_from_power(tn, f, g);
    report.entries.push_back({n, std::move(d)});
  }
  return report;
}

CategoryRow category_predicates(const SkewProduct& t, long k) {
  if (k < 1) throw DomainError("category predicates need k >= 1");
  return category_from_power(power(t, k), k);
}

std::vector<CategoryRow> category_sweep(const SkewProduct& t, long k_max) {
  std::vector<CategoryRow> rows;
  SkewProduct tk = SkewProduct::identity(t.p());
  for (long k = 1; k <= k_max; ++k) {
    tk = compose(t, tk);
    rows.push_back(category_from_power(tk, k));
  }
  return rows;
}

// ---------------------------------------------------------------------------

DenseFamily::DenseFamily(int p, int rank) : p_(p), rank_(rank) {
  const Index n = cells(p, rank);
  members_.reserve(n * n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) members_.push_back(StepFunctionZ::square(p, rank, i, j));
  }
}

DenseFamily dense_family(int p, int rank) { return DenseFamily(p, rank); }

bool in_u(const SkewProduct& t, const DenseFamily& family, std::size_t i, std::size_t j, long k,
          long n) {
  if (i >= family.size() || j >= family.size()) throw DomainError("family member index out of range");
  if (k < 1) throw DomainError("in_U needs k >= 1");
  const Rational bound(mpz_class(1), mpz_class(k) * mpz_class(k));
  return rigidity_defect_sq(t, family[i], family[j], n) < bound;
}

std::vector<long> certify_relative_rigidity(const SkewProduct& t, const DenseFamily& family,
                                            long n_max, const Rational& tol) {
  const Rational bound = tol * tol;
  std::vector<long> times;
  SkewProduct tn = SkewProduct::identity(t.p());
  for (long n = 1; n <= n_max; ++n) {
    tn = compose(t, tn);
    const SkewProduct lifted = SkewProduct::lift(tn.base());
    std::vector<StepFunctionZ> moved, moved_base;
    for (const auto& f : family.members()) {
      moved.push_back(koopman_pullback(tn, f));
      moved_base.push_back(koopman_pullback(lifted, f));
    }
    bool ok = true;
    for (std::size_t i = 0; i < family.size() && ok; ++i) {
      for (std::size_t j = 0; j < family.size() && ok; ++j) {
        const Rational d =
            (cond_exp(moved[i] * family[j]) - cond_exp(moved_base[i] * family[j])).l2_norm_sq();
        ok = d <= bound;
      }
    }
    if (ok) times.push_back(n);
  }
  return times;
}

BoundCheck cond_exp_bound_check(const StepFunctionZ& g, const StepFunctionZ& h) {
  BoundCheck out;
  out.lhs_sq = cond_exp(g * h).l2_norm_sq();
  // sup of the fiber norm² ‖g(x,·)‖²_{L²(Y)}
  const StepFunctionX fiber_sq = cond_exp(g * g);
  Rational sup;
  for (const auto& v : fiber_sq.values()) sup = std::max(sup, v);
  out.rhs_sq = sup * h.l2_norm_sq();
  return out;
}

bool is_half_fiber_set(const StepFunctionZ& a) {
  if (!a.is_indicator()) throw DomainError("is_half_fiber_set needs a 0/1-valued function");
  return cond_exp(a).is_constant(Rational(1, 2));
}

bool transport_check(const SkewProduct& t, const SkewProduct& s, const StepFunctionZ& a, long n) {
  if (!s.has_identity_base()) throw DomainError("transport_check: S must have identity base");
  if (!is_half_fiber_set(a)) throw DomainError("transport_check: A is not a half-fiber set");
  require_nonnegative(n);
  const StepFunctionZ f = koopman_pullback(inverse(s), a);
  const SkewProduct conj_n = power(conjugate(s, t), n);
  const StepFunctionX lhs = cond_exp(koopman_pullback(conj_n, f) * f);
  const StepFunctionX rhs = cond_exp(koopman_pullback(power(t, n), a) * a);
  return lhs == rhs;
}

}  // namespace skew
