#include "tvrt/matrix.hpp"

namespace tvrt {

FMatrix FMatrix::identity(const FieldPtr& f, size_t n) {
  FMatrix m(f, n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = FieldElement::one(f);
  return m;
}

FMatrix FMatrix::operator*(const FMatrix& o) const {
  if (cols_ != o.rows_) throw Error("matrix shape mismatch in product");
  FMatrix r(fld_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const FieldElement& a = at(i, k);
      if (a.is_zero()) continue;
      for (size_t j = 0; j < o.cols_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) = r.at(i, j) + a * o.at(k, j);
      }
    }
  return r;
}

FMatrix FMatrix::operator+(const FMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch in sum");
  FMatrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = r.data_[i] + o.data_[i];
  return r;
}

FMatrix FMatrix::operator-(const FMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch in difference");
  FMatrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = r.data_[i] - o.data_[i];
  return r;
}

FMatrix FMatrix::scaled(const FieldElement& s) const {
  FMatrix r = *this;
  for (auto& e : r.data_) e = e * s;
  return r;
}

bool FMatrix::operator==(const FMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < data_.size(); ++i)
    if (data_[i] != o.data_[i]) return false;
  return true;
}

FieldElement FMatrix::det() const {
  if (rows_ != cols_) throw Error("determinant of non-square matrix");
  FMatrix m = *this;
  FieldElement d = FieldElement::one(fld_);
  size_t n = rows_;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m.at(piv, col).is_zero()) ++piv;
    if (piv == n) return FieldElement::zero(fld_);
    if (piv != col) {
      for (size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      d = -d;
    }
    d = d * m.at(col, col);
    FieldElement inv = m.at(col, col).inverse();
    for (size_t r = col + 1; r < n; ++r) {
      if (m.at(r, col).is_zero()) continue;
      FieldElement factor = m.at(r, col) * inv;
      for (size_t j = col; j < n; ++j)
        m.at(r, j) = m.at(r, j) - factor * m.at(col, j);
    }
  }
  return d;
}

FMatrix FMatrix::inverse() const {
  if (rows_ != cols_) throw Error("inverse of non-square matrix");
  size_t n = rows_;
  FMatrix m = *this;
  FMatrix inv = identity(fld_, n);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m.at(piv, col).is_zero()) ++piv;
    if (piv == n) throw Error("matrix is singular");
    if (piv != col)
      for (size_t j = 0; j < n; ++j) {
        std::swap(m.at(piv, j), m.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    FieldElement s = m.at(col, col).inverse();
    for (size_t j = 0; j < n; ++j) {
      m.at(col, j) = m.at(col, j) * s;
      inv.at(col, j) = inv.at(col, j) * s;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m.at(r, col).is_zero()) continue;
      FieldElement factor = m.at(r, col);
      for (size_t j = 0; j < n; ++j) {
        m.at(r, j) = m.at(r, j) - factor * m.at(col, j);
        inv.at(r, j) = inv.at(r, j) - factor * inv.at(col, j);
      }
    }
  }
  return inv;
}

bool FMatrix::is_invertible() const {
  return rows_ == cols_ && !det().is_zero();
}

std::vector<FieldElement> FMatrix::apply(const std::vector<FieldElement>& v) const {
  if (v.size() != cols_) throw Error("matrix/vector shape mismatch");
  std::vector<FieldElement> r(rows_, FieldElement::zero(fld_));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] = r[i] + at(i, j) * v[j];
  return r;
}

}  // namespace tvrt
