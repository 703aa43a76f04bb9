#pragma once

// Small dense matrices over a cyclotomic field, with exact Gaussian
// elimination (first-nonzero pivoting; there is no ordering on these scalars,
// so no pivot-size heuristics).

#include <vector>

#include "tvrt/cyclotomic.hpp"

namespace tvrt {

class FMatrix {
 public:
  FMatrix() = default;
  FMatrix(const FieldPtr& f, size_t rows, size_t cols)
      : fld_(f), rows_(rows), cols_(cols), data_(rows * cols, FieldElement::zero(f)) {}

  static FMatrix identity(const FieldPtr& f, size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const FieldPtr& field() const { return fld_; }

  FieldElement& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const FieldElement& at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  FMatrix operator*(const FMatrix& o) const;
  FMatrix operator+(const FMatrix& o) const;
  FMatrix operator-(const FMatrix& o) const;
  FMatrix scaled(const FieldElement& s) const;
  bool operator==(const FMatrix& o) const;
  bool operator!=(const FMatrix& o) const { return !(*this == o); }

  FieldElement det() const;
  // exact inverse; throws Error when singular
  FMatrix inverse() const;
  bool is_invertible() const;

  std::vector<FieldElement> apply(const std::vector<FieldElement>& v) const;

 private:
  FieldPtr fld_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<FieldElement> data_;
};

}  // namespace tvrt
