#include "skewlab/constructions.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "skewlab/errors.hpp"

namespace skew {

// ---------------------------------------------------------------------------
// Rokhlin towers

PAdicSet RokhlinTower::level(long i) const { return base.power(i).image(floor); }

RokhlinTower rokhlin_tower(const PAdicPermutation& base, long height) {
  if (height < 1) throw TowerError("tower height must be >= 1");
  const auto cycles = base.cycles();
  if (cycles.size() != 1) {
    throw TowerError("tower base must be a single cycle (it has " + std::to_string(cycles.size()) +
                     " cycles)");
  }
  const auto& cycle = cycles.front();
  const Index len = cycle.size();
  if (static_cast<Index>(height) > len) {
    throw TowerError("base cycle of length " + std::to_string(len) +
                     " is shorter than the tower height " + std::to_string(height));
  }
  const Index columns = len / static_cast<Index>(height);
  std::vector<Index> floor;
  for (Index t = 0; t < columns; ++t) floor.push_back(cycle[t * static_cast<Index>(height)]);
  std::sort(floor.begin(), floor.end());

  RokhlinTower tower{base, PAdicSet(base.p(), base.rank(), std::move(floor)), height, Rational()};
  tower.residual = Rational(1) - Rational(height) * tower.floor.measure();

  // Disjointness of all levels, checked on the index sets.
  std::vector<char> hit(len, 0);
  for (long i = 0; i < height; ++i) {
    const PAdicSet lvl = tower.level(i);
    for (Index j : lvl.indices()) {
      if (hit[j]) throw TowerError("tower levels overlap");
      hit[j] = 1;
    }
  }
  return tower;
}

Partition label_partition(const SkewProduct& t) {
  return {t.p(), t.base_rank(), std::vector<std::size_t>(t.assignment().begin(), t.assignment().end())};
}

namespace {

Partition refine_partition(const Partition& part, int rank) {
  if (part.cell.size() != cells(part.p, part.rank)) {
    throw DomainError("partition must label all " + std::to_string(cells(part.p, part.rank)) +
                      " rank-" + std::to_string(part.rank) + " intervals");
  }
  if (rank < part.rank) throw RankError("cannot refine partition to a lower rank");
  const Index f = cells(part.p, rank) / part.cell.size();
  Partition out{part.p, rank, {}};
  out.cell.reserve(part.cell.size() * f);
  for (std::size_t c : part.cell) out.cell.insert(out.cell.end(), f, c);
  return out;
}

}  // namespace

RefinedTower refine_tower(const RokhlinTower& tower, const Partition& partition) {
  require_same_base(tower.base.p(), partition.p, "refine_tower");
  const int w = std::max({partition.rank, tower.base.rank(), tower.floor.rank()});
  RefinedTower rt{tower, refine_partition(partition, w), w, {}, {}};
  const PAdicPermutation base = tower.base.refine(w);
  const PAdicSet floor = tower.floor.refine(w);
  rt.pieces.assign(floor.indices().begin(), floor.indices().end());
  for (Index piece : rt.pieces) {
    std::vector<std::size_t> row;
    row.reserve(static_cast<std::size_t>(tower.height));
    Index x = piece;
    for (long i = 0; i < tower.height; ++i) {
      row.push_back(rt.partition.cell[x]);
      x = base[x];
    }
    rt.labels.push_back(std::move(row));
  }
  // T0^i B_l ⊂ A_{α(l,i)}: every level of every piece lies in its labelled cell.
  for (std::size_t l = 0; l < rt.pieces.size(); ++l) {
    PAdicSet lvl(base.p(), w, {rt.pieces[l]});
    for (long i = 0; i < tower.height; ++i) {
      for (Index j : lvl.indices()) {
        if (rt.partition.cell[j] != rt.labels[l][static_cast<std::size_t>(i)]) {
          throw TowerError("refined level escapes its partition cell");
        }
      }
      lvl = base.image(lvl);
    }
  }
  return rt;
}

// ---------------------------------------------------------------------------
// Conjugator

ConjugatorResult hgw_conjugator(const SkewProduct& target, const SkewProduct& hat,
                                const RefinedTower& tower) {
  require_same_base(target.p(), hat.p(), "hgw_conjugator");
  require_same_base(target.p(), tower.tower.base.p(), "hgw_conjugator");
  if (!(target.base() == hat.base()) || !(target.base() == tower.tower.base)) {
    throw DomainError("target, T-hat and tower must share the base map");
  }
  const int w = std::max({tower.rank, target.base_rank(), hat.base_rank()});
  const int fr = std::max(target.fiber_rank(), hat.fiber_rank());
  const SkewProduct rt = target.refine(w, fr);
  const SkewProduct rh = hat.refine(w, fr);
  const Partition part = refine_partition(tower.partition, w);
  const Index f = cells(target.p(), w) / cells(target.p(), tower.rank);

  // R_c: the single target fiber on partition cell c.
  std::vector<std::optional<PAdicPermutation>> fiber_of_cell;
  for (Index x = 0; x < rt.base().size(); ++x) {
    const std::size_t c = part.cell[x];
    if (c >= fiber_of_cell.size()) fiber_of_cell.resize(c + 1);
    if (!fiber_of_cell[c]) {
      fiber_of_cell[c] = rt.fiber_at(x);
    } else if (!(*fiber_of_cell[c] == rt.fiber_at(x))) {
      throw DomainError("target is not piecewise constant over the tower partition");
    }
  }

  const int p = target.p();
  std::vector<PAdicPermutation> s(rt.base().size(), PAdicPermutation::identity(p, fr));
  std::vector<char> below_top(rt.base().size(), 0);
  for (std::size_t l = 0; l < tower.pieces.size(); ++l) {
    for (Index sub = 0; sub < f; ++sub) {
      Index x = tower.pieces[l] * f + sub;
      for (long i = 0; i + 1 < tower.tower.height; ++i) {
        const std::size_t alpha = part.cell[x];
        const PAdicPermutation& r = *fiber_of_cell[alpha];
        const Index next = rt.base()[x];
        s[next] = compose(rh.fiber_at(x), compose(s[x], r.inverse()));
        below_top[x] = 1;
        x = next;
      }
    }
  }
  SkewProduct conj = SkewProduct::from_cells(PAdicPermutation::identity(p, w), s);

  const SkewProduct moved = conjugate(conj, rh).refine(w, fr);
  for (Index x = 0; x < rt.base().size(); ++x) {
    if (below_top[x] && !(moved.fiber_at(x) == rt.fiber_at(x))) {
      throw FalsificationError("conjugated fiber differs from the target on a tower level");
    }
  }
  ConjugatorResult out{std::move(conj), tower.tower.height - 1,
                       tower.tower.residual + tower.tower.level_measure()};
  return out;
}

RokhlinTower choose_tower(const PAdicPermutation& base, const Rational& eps) {
  const auto cycles = base.cycles();
  if (cycles.size() != 1) throw TowerError("tower base must be a single cycle");
  const Index len = cycles.front().size();
  for (Index n = 1; n <= len; ++n) {
    const Index columns = len / n;
    const Rational bound(mpz_class(static_cast<unsigned long>(len - n * columns + columns)),
                         mpz_class(static_cast<unsigned long>(len)));
    if (bound < eps) return rokhlin_tower(base, static_cast<long>(n));
  }
  // The best bound is 1/len; find the depth whose full cycle would beat eps.
  int need = base.rank();
  mpz_class cycle_len = 1;
  for (int i = 0; i < need; ++i) cycle_len *= base.p();
  while (Rational(mpz_class(1), cycle_len) >= eps) {
    cycle_len *= base.p();
    ++need;
  }
  throw ResolutionError("eps = " + eps.str() + " needs a single-cycle base of depth >= " +
                            std::to_string(need) + " (have depth " +
                            std::to_string(base.rank()) + ")",
                        need);
}

// ---------------------------------------------------------------------------
// p-adic approximation

namespace {

// Snap at rank k without the rank cap (used to probe past it).
std::vector<Index> snap_indices(const IntervalMap& r, Index n) {
  std::vector<std::pair<Rational, Index>> images;
  images.reserve(n);
  const mpz_class two_n(2 * static_cast<unsigned long>(n));
  for (Index j = 0; j < n; ++j) {
    const Rational mid(mpz_class(2 * static_cast<unsigned long>(j) + 1), two_n);
    images.emplace_back(r.apply(mid), j);
  }
  std::sort(images.begin(), images.end());
  std::vector<Index> perm(n);
  for (Index pos = 0; pos < n; ++pos) perm[images[pos].second] = pos;
  return perm;
}

// max over reference intervals F of ν(RF △ PF), P given on n cells.
Rational snap_discrepancy(const IntervalMap& r, const std::vector<Index>& perm, Index n,
                          Index ref_cells) {
  const Index f = n / ref_cells;
  const mpz_class nz(static_cast<unsigned long>(n));
  Rational worst;
  for (Index e = 0; e < ref_cells; ++e) {
    std::vector<IntervalUnion::Span> spans;
    spans.reserve(f);
    for (Index c = 0; c < f; ++c) {
      const Index t = perm[e * f + c];
      spans.emplace_back(Rational(mpz_class(static_cast<unsigned long>(t)), nz),
                         Rational(mpz_class(static_cast<unsigned long>(t + 1)), nz));
    }
    const IntervalUnion img_p(std::move(spans));
    const IntervalUnion img_r = r.image(Rational(mpz_class(static_cast<unsigned long>(e * f)), nz),
                                        Rational(mpz_class(static_cast<unsigned long>((e + 1) * f)), nz));
    worst = std::max(worst, symdiff_measure(img_r, img_p));
  }
  return worst;
}

constexpr Index kProbeCells = Index{1} << 16;

// Rotation amount in [0,1) when r is a rotation.
std::optional<Rational> rotation_amount(const IntervalMap& r) {
  const auto pieces = r.pieces();
  if (pieces.size() == 1) return pieces[0].shift.is_zero() ? std::optional<Rational>(Rational(0)) : std::nullopt;
  if (pieces.size() != 2 || pieces[0].shift - pieces[1].shift != Rational(1)) return std::nullopt;
  return pieces[0].shift;
}

// Least rank past the probe at which the snapped rotation meets eps. The snap
// at rank k rotates by s/p^k with s the number of midpoints in [1 - alpha, 1).
int rotation_rank(const Rational& alpha, const Rational& eps, int p, int reference_rank, int from) {
  const Rational ref_len = Rational(1) / pow(Rational(p), static_cast<unsigned>(reference_rank));
  mpz_class n;
  mpz_ui_pow_ui(n.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(from));
  for (int k = from; k <= 4096; ++k, n *= p) {
    // (2j+1)/(2n) >= 1 - alpha  <=>  j >= ((1 - alpha) 2n - 1) / 2
    const Rational lo = ((Rational(1) - alpha) * Rational(mpz_class(2 * n)) - Rational(1)) / Rational(2);
    mpz_class first = lo.floor();
    if (Rational(first) < lo) ++first;
    if (first < 0) first = 0;
    const mpz_class shift = first > n ? mpz_class(0) : n - first;
    const Rational delta = (alpha - Rational(shift, n)).abs();
    const Rational d = Rational(2) * std::min(delta, ref_len);
    if (d < eps) return k;
  }
  return -1;
}

}  // namespace

PAdicPermutation snap_to_rank(const IntervalMap& r, int p, int rank) {
  return PAdicPermutation(p, rank, snap_indices(r, cells(p, rank)));
}

Approximation padic_approx(const IntervalMap& r, const Rational& eps, int p, int reference_rank) {
  if (eps.sign() <= 0) throw DomainError("padic_approx needs eps > 0");
  const Index ref_cells = cells(p, reference_rank);
  if (auto exact = r.to_padic(p)) return {std::move(*exact), Rational(0)};

  const int cap = Limits::max_rank(p);
  for (int k = std::max(reference_rank, 1); k <= cap; ++k) {
    const Index n = cells(p, k);
    auto perm = snap_indices(r, n);
    Rational d = snap_discrepancy(r, perm, n, ref_cells);
    if (d < eps) return {PAdicPermutation(p, k, std::move(perm)), std::move(d)};
  }
  // Probe past the cap so the error can name the rank that would work.
  Index n = cells(p, cap);
  for (int k = cap + 1; n <= kProbeCells / static_cast<Index>(p); ++k) {
    n *= static_cast<Index>(p);
    if (snap_discrepancy(r, snap_indices(r, n), n, ref_cells) < eps) {
      throw ResolutionError("eps = " + eps.str() + " needs approximation rank " +
                                std::to_string(k) + " above the cap " + std::to_string(cap),
                            k);
    }
  }
  if (auto alpha = rotation_amount(r)) {
    const int need = rotation_rank(*alpha, eps, p, reference_rank, cap + 1);
    if (need > 0) {
      throw ResolutionError("eps = " + eps.str() + " needs approximation rank " +
                                std::to_string(need) + " above the cap " + std::to_string(cap),
                            need);
    }
  }
  throw ResolutionError("eps = " + eps.str() + " is out of reach below the probe limit", -1);
}

long point_period(const PAdicPermutation& base) {
  const long limit = static_cast<long>(base.size()) + 1;
  PAdicPermutation pw = base;
  for (long q = 2; q <= limit; ++q) {
    pw = compose(base, pw);
    if (pw.is_identity()) return q;
  }
  return 0;
}

RigidifyResult periodic_rigidify(const TranslationSkew& s, const Rational& eps, int reference_rank) {
  if (eps.sign() <= 0) throw DomainError("periodic_rigidify needs eps > 0");
  const int p = s.p();
  if (point_period(s.base()) != p) {
    throw DomainError("base is not of period p = " + std::to_string(p));
  }
  const Rational n_labels(static_cast<long>(s.label_count()));
  std::vector<PAdicPermutation> approx;
  int max_rank = 0;
  for (std::size_t k = 0; k < s.label_count(); ++k) {
    const Rational tol = eps / (Rational(2) * n_labels * s.label_measure(k));
    Approximation a = padic_approx(s.maps()[k], tol, p, reference_rank);
    max_rank = std::max(max_rank, a.perm.rank());
    approx.push_back(std::move(a.perm));
  }
  SkewProduct q(s.base(), std::vector<std::size_t>(s.assignment().begin(), s.assignment().end()),
                std::move(approx));

  RigidifyResult out{q, weak_distance(s, TranslationSkew::from_skew(q), reference_rank), max_rank,
                     mpz_class(0)};
  if (!(out.weak_distance < eps / Rational(2))) {
    throw FalsificationError("weak distance " + out.weak_distance.str() + " is not below eps/2");
  }
  mpz_ui_pow_ui(out.period.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(max_rank + 1));
  if (!power(q, out.period.get_si()).is_identity()) {
    throw FalsificationError("Q^" + out.period.get_str() + " is not the identity (order of Q is " +
                             q.order().get_str() + ")");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sampling

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw DomainError("Rng::below(0)");
  // Rejection keeps the draw uniform and independent of the standard library.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

PAdicPermutation sample_permutation(int p, int rank, Rng& rng) {
  std::vector<Index> perm(cells(p, rank));
  std::iota(perm.begin(), perm.end(), Index{0});
  for (Index i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  return PAdicPermutation(p, rank, std::move(perm));
}

SkewProduct sample_skew(const PAdicPermutation& base, const SampleOptions& options,
                        std::uint64_t seed) {
  if (options.labels < 1) throw DomainError("sample_skew needs at least one label");
  if (options.degenerate) return SkewProduct::lift(base, options.fiber_rank);
  Rng rng(seed);
  std::vector<PAdicPermutation> maps;
  for (std::size_t k = 0; k < options.labels; ++k) {
    maps.push_back(sample_permutation(base.p(), options.fiber_rank, rng));
  }
  std::vector<std::size_t> labels(base.size());
  for (auto& l : labels) l = static_cast<std::size_t>(rng.below(options.labels));
  return SkewProduct(base, std::move(labels), std::move(maps));
}

}  // namespace skew
