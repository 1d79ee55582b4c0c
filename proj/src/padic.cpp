#include "skewlab/padic.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <string>

#include "skewlab/errors.hpp"

namespace skew {

namespace {

constexpr int kDefaultBinaryCap = 12;
std::atomic<int> g_binary_cap{kDefaultBinaryCap};

Index raw_pow(int p, int k) {
  Index r = 1;
  for (int i = 0; i < k; ++i) r *= static_cast<Index>(p);
  return r;
}

}  // namespace

int Limits::max_rank(int p) {
  const int cap = g_binary_cap.load();
  if (p == 2) return cap;
  const Index budget = Index{1} << cap;
  int k = 0;
  Index c = 1;
  while (c * static_cast<Index>(p) <= budget) {
    c *= static_cast<Index>(p);
    ++k;
  }
  return k;
}

void Limits::set_binary_cap(int rank) {
  if (rank < 1 || rank > 30) throw DomainError("rank cap out of range");
  g_binary_cap.store(rank);
}

void Limits::reset() { g_binary_cap.store(kDefaultBinaryCap); }

void check_base(int p) {
  if (p < 2) throw DomainError("p-adic base must be >= 2, got " + std::to_string(p));
}

void check_rank(int p, int rank) {
  check_base(p);
  if (rank < 0) throw RankError("negative rank");
  if (rank > Limits::max_rank(p)) {
    throw CapError("rank " + std::to_string(rank) + " exceeds the cap " +
                   std::to_string(Limits::max_rank(p)) + " for p = " + std::to_string(p));
  }
}

Index cells(int p, int rank) {
  check_rank(p, rank);
  return raw_pow(p, rank);
}

void require_same_base(int p, int q, const char* what) {
  if (p != q) {
    throw BaseMismatchError(std::string(what) + ": base mismatch (p = " + std::to_string(p) +
                            " vs " + std::to_string(q) + ")");
  }
}

Index cell_of(int p, int rank, const Rational& x) {
  if (x.sign() < 0 || x >= Rational(1)) throw DomainError("point outside [0,1): " + x.str());
  Rational scaled = x * Rational(mpz_class(static_cast<unsigned long>(cells(p, rank))));
  if (scaled.is_integer()) {
    throw BoundaryError("point " + x.str() + " lies on a rank-" + std::to_string(rank) +
                        " cell boundary");
  }
  return static_cast<Index>(scaled.floor().get_ui());
}

// ---------------------------------------------------------------------------

PAdicInterval::PAdicInterval(int p_, int rank_, Index index_) : p(p_), rank(rank_), index(index_) {
  if (index >= cells(p, rank)) throw DomainError("interval index out of range");
}

Rational PAdicInterval::left() const {
  return Rational(mpz_class(static_cast<unsigned long>(index)),
                  mpz_class(static_cast<unsigned long>(cells(p, rank))));
}

Rational PAdicInterval::right() const {
  return Rational(mpz_class(static_cast<unsigned long>(index + 1)),
                  mpz_class(static_cast<unsigned long>(cells(p, rank))));
}

Rational PAdicInterval::measure() const {
  return Rational(mpz_class(1), mpz_class(static_cast<unsigned long>(cells(p, rank))));
}

// ---------------------------------------------------------------------------

PAdicSet::PAdicSet(int p, int rank, std::vector<Index> indices)
    : p_(p), rank_(rank), indices_(std::move(indices)) {
  const Index n = cells(p, rank);
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] >= n) throw DomainError("set index out of range");
    if (i > 0 && indices_[i] <= indices_[i - 1]) {
      throw DomainError("set indices must be strictly increasing");
    }
  }
}

PAdicSet PAdicSet::empty(int p, int rank) { return PAdicSet(p, rank, {}); }

PAdicSet PAdicSet::full(int p, int rank) {
  std::vector<Index> all(cells(p, rank));
  std::iota(all.begin(), all.end(), Index{0});
  return PAdicSet(p, rank, std::move(all));
}

PAdicSet PAdicSet::from_interval(const PAdicInterval& iv) {
  return PAdicSet(iv.p, iv.rank, {iv.index});
}

bool PAdicSet::contains(Index j) const {
  return std::binary_search(indices_.begin(), indices_.end(), j);
}

PAdicSet PAdicSet::refine(int rank) const {
  if (rank < rank_) throw RankError("cannot refine a rank-" + std::to_string(rank_) +
                                    " set to rank " + std::to_string(rank));
  const Index f = cells(p_, rank) / cells(p_, rank_);
  std::vector<Index> out;
  out.reserve(indices_.size() * f);
  for (Index j : indices_) {
    for (Index c = 0; c < f; ++c) out.push_back(j * f + c);
  }
  return PAdicSet(p_, rank, std::move(out));
}

Rational PAdicSet::measure() const {
  return Rational(mpz_class(static_cast<unsigned long>(indices_.size())),
                  mpz_class(static_cast<unsigned long>(cells(p_, rank_))));
}

namespace {

template <class Op>
PAdicSet combine(const PAdicSet& a, const PAdicSet& b, Op op) {
  require_same_base(a.p(), b.p(), "set operation");
  const int r = std::max(a.rank(), b.rank());
  PAdicSet ra = a.refine(r);
  PAdicSet rb = b.refine(r);
  std::vector<Index> out;
  op(ra.indices().begin(), ra.indices().end(), rb.indices().begin(), rb.indices().end(),
     std::back_inserter(out));
  return PAdicSet(a.p(), r, std::move(out));
}

}  // namespace

PAdicSet operator|(const PAdicSet& a, const PAdicSet& b) {
  return combine(a, b, [](auto... args) { std::set_union(args...); });
}
PAdicSet operator&(const PAdicSet& a, const PAdicSet& b) {
  return combine(a, b, [](auto... args) { std::set_intersection(args...); });
}
PAdicSet operator-(const PAdicSet& a, const PAdicSet& b) {
  return combine(a, b, [](auto... args) { std::set_difference(args...); });
}
PAdicSet operator^(const PAdicSet& a, const PAdicSet& b) {
  return combine(a, b, [](auto... args) { std::set_symmetric_difference(args...); });
}

bool operator==(const PAdicSet& a, const PAdicSet& b) {
  if (a.p() != b.p()) return false;
  const int r = std::max(a.rank(), b.rank());
  auto ra = a.refine(r);
  auto rb = b.refine(r);
  return std::equal(ra.indices().begin(), ra.indices().end(), rb.indices().begin(),
                    rb.indices().end());
}

Rational symdiff_measure(const PAdicSet& a, const PAdicSet& b) { return (a ^ b).measure(); }

// ---------------------------------------------------------------------------

PAdicPermutation::PAdicPermutation(int p, int rank, std::vector<Index> perm)
    : p_(p), rank_(rank), perm_(std::move(perm)) {
  const Index n = cells(p, rank);
  if (perm_.size() != n) {
    throw DomainError("permutation of rank " + std::to_string(rank) + " needs " +
                      std::to_string(n) + " entries, got " + std::to_string(perm_.size()));
  }
  std::vector<char> seen(n, 0);
  for (Index v : perm_) {
    if (v >= n || seen[v]) throw DomainError("mapping is not a bijection");
    seen[v] = 1;
  }
}

PAdicPermutation PAdicPermutation::identity(int p, int rank) {
  std::vector<Index> id(cells(p, rank));
  std::iota(id.begin(), id.end(), Index{0});
  return PAdicPermutation(p, rank, std::move(id));
}

PAdicPermutation PAdicPermutation::rotation(int p, int rank, Index shift) {
  const Index n = cells(p, rank);
  std::vector<Index> m(n);
  for (Index j = 0; j < n; ++j) m[j] = (j + shift) % n;
  return PAdicPermutation(p, rank, std::move(m));
}

PAdicPermutation PAdicPermutation::refine(int rank) const {
  if (rank < rank_) throw RankError("cannot refine a rank-" + std::to_string(rank_) +
                                    " permutation to rank " + std::to_string(rank));
  if (rank == rank_) return *this;
  const Index f = cells(p_, rank) / cells(p_, rank_);
  std::vector<Index> out(perm_.size() * f);
  for (Index j = 0; j < perm_.size(); ++j) {
    for (Index c = 0; c < f; ++c) out[j * f + c] = perm_[j] * f + c;
  }
  return PAdicPermutation(p_, rank, std::move(out));
}

PAdicPermutation PAdicPermutation::inverse() const {
  std::vector<Index> inv(perm_.size());
  for (Index j = 0; j < perm_.size(); ++j) inv[perm_[j]] = j;
  return PAdicPermutation(p_, rank_, std::move(inv));
}

PAdicPermutation PAdicPermutation::power(long n) const {
  const PAdicPermutation step = n < 0 ? inverse() : *this;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  // Walk each cycle once: j maps to the element e steps ahead.
  std::vector<Index> out(perm_.size());
  for (const auto& cyc : step.cycles()) {
    const std::size_t len = cyc.size();
    const std::size_t shift = e % len;
    for (std::size_t i = 0; i < len; ++i) out[cyc[i]] = cyc[(i + shift) % len];
  }
  return PAdicPermutation(p_, rank_, std::move(out));
}

bool PAdicPermutation::is_identity() const {
  for (Index j = 0; j < perm_.size(); ++j) {
    if (perm_[j] != j) return false;
  }
  return true;
}

std::vector<std::vector<Index>> PAdicPermutation::cycles() const {
  std::vector<std::vector<Index>> out;
  std::vector<char> seen(perm_.size(), 0);
  for (Index s = 0; s < perm_.size(); ++s) {
    if (seen[s]) continue;
    std::vector<Index> cyc;
    for (Index j = s; !seen[j]; j = perm_[j]) {
      seen[j] = 1;
      cyc.push_back(j);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

mpz_class PAdicPermutation::order() const {
  mpz_class l = 1;
  for (const auto& cyc : cycles()) {
    mpz_class len(static_cast<unsigned long>(cyc.size()));
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), len.get_mpz_t());
  }
  return l;
}

PAdicSet PAdicPermutation::image(const PAdicSet& s) const {
  require_same_base(p_, s.p(), "image");
  const int r = std::max(rank_, s.rank());
  const PAdicPermutation pr = refine(r);
  const PAdicSet sr = s.refine(r);
  std::vector<Index> out;
  out.reserve(sr.size());
  for (Index j : sr.indices()) out.push_back(pr[j]);
  std::sort(out.begin(), out.end());
  return PAdicSet(p_, r, std::move(out));
}

Rational PAdicPermutation::apply(const Rational& x) const {
  const Index j = cell_of(p_, rank_, x);
  const long delta = static_cast<long>(perm_[j]) - static_cast<long>(j);
  return x + Rational(mpz_class(delta), mpz_class(static_cast<unsigned long>(perm_.size())));
}

bool operator==(const PAdicPermutation& a, const PAdicPermutation& b) {
  if (a.p() != b.p()) return false;
  const int r = std::max(a.rank(), b.rank());
  auto ra = a.refine(r);
  auto rb = b.refine(r);
  return std::equal(ra.mapping().begin(), ra.mapping().end(), rb.mapping().begin());
}

PAdicPermutation compose(const PAdicPermutation& a, const PAdicPermutation& b) {
  require_same_base(a.p(), b.p(), "compose");
  const int r = std::max(a.rank(), b.rank());
  const PAdicPermutation ra = a.refine(r);
  const PAdicPermutation rb = b.refine(r);
  std::vector<Index> out(ra.size());
  for (Index j = 0; j < out.size(); ++j) out[j] = ra[rb[j]];
  return PAdicPermutation(a.p(), r, std::move(out));
}

Rational weak_distance(const PAdicPermutation& a, const PAdicPermutation& b, int rank) {
  require_same_base(a.p(), b.p(), "weak_distance");
  const int w = std::max({rank, a.rank(), b.rank()});
  const PAdicPermutation ra = a.refine(w);
  const PAdicPermutation rb = b.refine(w);
  const Index groups = cells(a.p(), rank);
  const Index f = cells(a.p(), w) / groups;
  std::vector<char> mark(ra.size(), 0);
  Index worst = 0;
  for (Index e = 0; e < groups; ++e) {
    for (Index c = 0; c < f; ++c) mark[ra[e * f + c]] = 1;
    Index common = 0;
    for (Index c = 0; c < f; ++c) common += mark[rb[e * f + c]] ? 1 : 0;
    for (Index c = 0; c < f; ++c) mark[ra[e * f + c]] = 0;
    worst = std::max(worst, 2 * (f - common));
  }
  return Rational(mpz_class(static_cast<unsigned long>(worst)),
                  mpz_class(static_cast<unsigned long>(ra.size())));
}

}  // namespace skew
