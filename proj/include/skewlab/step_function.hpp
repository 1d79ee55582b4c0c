#pragma once

#include <span>
#include <vector>

#include "skewlab/padic.hpp"
#include "skewlab/rational.hpp"

namespace skew {

// Function on X = [0,1) constant on each rank-K p-adic interval.
class StepFunctionX {
public:
  StepFunctionX(int p, int rank, std::vector<Rational> values);

  static StepFunctionX constant(int p, int rank, const Rational& c);
  static StepFunctionX indicator(const PAdicSet& s);

  int p() const { return p_; }
  int rank() const { return rank_; }
  Index size() const { return values_.size(); }
  const Rational& operator[](Index i) const { return values_[i]; }
  std::span<const Rational> values() const { return values_; }

  StepFunctionX refine(int rank) const;

  Rational integral() const;
  Rational l2_norm_sq() const;
  Rational l1_norm() const;
  Rational sup_norm() const;
  bool is_constant(const Rational& c) const;

  StepFunctionX scale(const Rational& c) const;

  friend StepFunctionX operator+(const StepFunctionX& a, const StepFunctionX& b);
  friend StepFunctionX operator-(const StepFunctionX& a, const StepFunctionX& b);
  friend StepFunctionX operator*(const StepFunctionX& a, const StepFunctionX& b);
  // Same function (ranks may differ).
  friend bool operator==(const StepFunctionX& a, const StepFunctionX& b);

private:
  int p_;
  int rank_;
  std::vector<Rational> values_;
};

// A p-adic rectangle union member: E × F with E ⊂ X and F ⊂ Y p-adic sets.
struct Rectangle {
  PAdicSet x;
  PAdicSet y;
};

// Function on Z = X × Y constant on rank-K squares E_i × F_j; values are
// stored row-major with the base cell i as row.
class StepFunctionZ {
public:
  StepFunctionZ(int p, int rank, std::vector<Rational> values);

  static StepFunctionZ constant(int p, int rank, const Rational& c);
  // Indicator of a union of rectangles (overlaps allowed).
  static StepFunctionZ indicator(std::span<const Rectangle> rects);
  static StepFunctionZ indicator(const Rectangle& rect);
  // χ_{E_i × F_j} at the given rank.
  static StepFunctionZ square(int p, int rank, Index i, Index j);
  // Indicator of X × [0, 1/2); needs even p.
  static StepFunctionZ half_fiber(int p);
  // f(x, y) = h(x).
  static StepFunctionZ from_base(const StepFunctionX& h);

  int p() const { return p_; }
  int rank() const { return rank_; }
  Index side() const { return side_; }
  const Rational& at(Index i, Index j) const { return values_[i * side_ + j]; }
  std::span<const Rational> values() const { return values_; }

  StepFunctionZ refine(int rank) const;

  Rational integral() const;
  Rational l2_norm_sq() const;
  Rational l1_norm() const;
  Rational sup_norm() const;
  bool is_indicator() const;

  StepFunctionZ scale(const Rational& c) const;

  friend StepFunctionZ operator+(const StepFunctionZ& a, const StepFunctionZ& b);
  friend StepFunctionZ operator-(const StepFunctionZ& a, const StepFunctionZ& b);
  friend StepFunctionZ operator*(const StepFunctionZ& a, const StepFunctionZ& b);
  friend bool operator==(const StepFunctionZ& a, const StepFunctionZ& b);

private:
  int p_;
  int rank_;
  Index side_;
  std::vector<Rational> values_;
};

}  // namespace skew
