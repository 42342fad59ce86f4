#pragma once

// Dense complex linear algebra sized for small open-system problems:
// 3x3 atom states, 4x4 two-qubit states, 9x9 pair states and superoperators
// up to 81x81. Storage is row-major and always dense.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace vicsim {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr std::size_t kMaxDimension = 81;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  // Nested-list constructor, one inner list per row.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> d);
  static ComplexMatrix diagonal(std::initializer_list<Complex> d);
  // Matrix unit |i><j| of dimension n.
  static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j);
  // |v><w|
  static ComplexMatrix outer(std::span<const Complex> v, std::span<const Complex> w);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  Complex trace() const;

  // Row-major vectorization: vec[i * cols + j] = M(i, j).
  ComplexVector vec() const { return data_; }
  static ComplexMatrix unvec(std::span<const Complex> v, std::size_t rows, std::size_t cols);

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> v);

// Kronecker product: (a (x) b)[i*rb + k, j*cb + l] = a[i,j] * b[k,l].
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor_product(std::span<const Complex> a, std::span<const Complex> b);

double frobenius_norm(const ComplexMatrix& m);
// Induced infinity norm (max absolute row sum).
double max_row_sum_norm(const ComplexMatrix& m);
double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b);

// max |M - M^dagger| elementwise.
double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol);

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
// Throws NotHermitian when max|m - m^dagger| > 1e-10 * max(1, max|m|).
Spectrum hermitian_eig(const ComplexMatrix& m);

// Eigenvalues below -kPsdRejectTolerance are genuine negativity; anything
// between that and zero is roundoff and is clipped to zero.
inline constexpr double kPsdRejectTolerance = 1e-8;

// Hermitian positive semidefinite square root. Throws NotPSD.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

// Matrix exponential by scaling and squaring of a truncated Taylor series.
ComplexMatrix expm(const ComplexMatrix& m);

}  // namespace vicsim
