#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "skewlab/padic.hpp"
#include "skewlab/rational.hpp"

namespace skew {

// Finite disjoint union of half-open intervals [a, b) inside [0, 1), kept
// sorted with adjacent pieces merged.
class IntervalUnion {
public:
  using Span = std::pair<Rational, Rational>;

  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Span> spans);

  std::span<const Span> spans() const { return spans_; }
  bool empty() const { return spans_.empty(); }
  Rational measure() const;

  friend IntervalUnion operator^(const IntervalUnion& a, const IntervalUnion& b);
  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

private:
  std::vector<Span> spans_;
};

Rational symdiff_measure(const IntervalUnion& a, const IntervalUnion& b);

// Invertible piecewise translation of [0, 1) with rational breakpoints (an
// interval exchange). Pieces tile [0, 1) in domain order and their images
// tile [0, 1) as well.
class IntervalMap {
public:
  struct Piece {
    Rational start;
    Rational end;
    Rational shift;
    friend bool operator==(const Piece&, const Piece&) = default;
  };

  explicit IntervalMap(std::vector<Piece> pieces);

  static IntervalMap identity();
  // y -> y + alpha mod 1.
  static IntervalMap rotation(const Rational& alpha);
  static IntervalMap from_padic(const PAdicPermutation& perm);
  // Standard interval exchange: domain pieces have the given lengths and are
  // laid out in the image in the order given by `image_order` (image_order[k]
  // is the domain piece placed k-th).
  static IntervalMap exchange(std::span<const Rational> lengths,
                              std::span<const std::size_t> image_order);

  std::span<const Piece> pieces() const { return pieces_; }
  std::size_t piece_count() const { return pieces_.size(); }

  Rational apply(const Rational& y) const;
  IntervalUnion image(const Rational& a, const Rational& b) const;
  IntervalUnion image(const IntervalUnion& u) const;

  IntervalMap inverse() const;
  bool is_identity() const;

  // The same map as a rank-k p-adic permutation for the least such k within
  // the rank cap, when one exists.
  std::optional<PAdicPermutation> to_padic(int p) const;

  friend bool operator==(const IntervalMap&, const IntervalMap&) = default;

private:
  std::vector<Piece> pieces_;
};

// a ∘ b.
IntervalMap compose(const IntervalMap& a, const IntervalMap& b);

// Max over rank-K p-adic intervals F of ν(aF △ bF).
Rational weak_distance(const IntervalMap& a, const IntervalMap& b, int p, int rank);

}  // namespace skew
