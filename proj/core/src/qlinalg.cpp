#include "vicsim/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vicsim/errors.hpp"

namespace vicsim {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument(std::string(what) + ": shape mismatch");
  }
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (!m.is_square() || m.empty()) {
    throw InvalidArgument(std::string(what) + ": expected a non-empty square matrix");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw InvalidArgument("ComplexMatrix: entry count does not match rows*cols");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw InvalidArgument("ComplexMatrix: ragged initializer list");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> d) {
  return diagonal(std::span<const Complex>(d.begin(), d.size()));
}

ComplexMatrix ComplexMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  ComplexMatrix m(n, n);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v, std::span<const Complex> w) {
  ComplexMatrix m(v.size(), w.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  }
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  }
  return r;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix r = *this;
  for (auto& z : r.data_) z = std::conj(z);
  return r;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix ComplexMatrix::unvec(std::span<const Complex> v, std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols, std::vector<Complex>(v.begin(), v.end()));
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator+=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator-=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix product: inner dimension mismatch");
  ComplexMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) throw InvalidArgument("matrix-vector product: dimension mismatch");
  ComplexVector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
    r[i] = acc;
  }
  return r;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.empty() || b.empty()) throw InvalidArgument("tensor_product: empty operand");
  const std::size_t rb = b.rows();
  const std::size_t cb = b.cols();
  ComplexMatrix r(a.rows() * rb, a.cols() * cb);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < rb; ++k) {
        for (std::size_t l = 0; l < cb; ++l) r(i * rb + k, j * cb + l) = aij * b(k, l);
      }
    }
  }
  return r;
}

ComplexVector tensor_product(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("tensor_product: empty operand");
  ComplexVector r;
  r.reserve(a.size() * b.size());
  for (const Complex& x : a) {
    for (const Complex& y : b) r.push_back(x * y);
  }
  return r;
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const Complex& z : m.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double max_row_sum_norm(const ComplexMatrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) row += std::abs(m(i, j));
    best = std::max(best, row);
  }
  return best;
}

double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (const Complex& z : m.entries()) best = std::max(best, std::abs(z));
  return best;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  return max_abs_diff(a.entries(), b.entries());
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw InvalidArgument("max_abs_diff: length mismatch");
  double best = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) best = std::max(best, std::abs(a[k] - b[k]));
  return best;
}

double hermiticity_defect(const ComplexMatrix& m) {
  require_square(m, "hermiticity_defect");
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) {
      best = std::max(best, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return best;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.is_square() && !m.empty() && hermiticity_defect(m) <= tol;
}

Spectrum hermitian_eig(const ComplexMatrix& m) {
  require_square(m, "hermitian_eig");
  const double scale = std::max(1.0, max_abs(m));
  if (hermiticity_defect(m) > 1e-10 * scale) {
    throw NotHermitian("hermitian_eig: input is not Hermitian within 1e-10");
  }

  const std::size_t n = m.rows();
  // Work on the exactly Hermitian part so roundoff asymmetry cannot leak in.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double target = 1e-14 * frobenius_norm(a);
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) s += std::norm(a(i, j));
      }
    }
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps && off_norm() > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        const Complex phase = a(p, q) / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();

        // Real symmetric Jacobi angle on the phase-rotated 2x2 block.
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // Unitary block acting on columns (p, q).
        const Complex g_pp = c;
        const Complex g_pq = s * phase;
        const Complex g_qp = -s * std::conj(phase);
        const Complex g_qq = c;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * g_pp + akq * g_qp;
          a(k, q) = akp * g_pq + akq * g_qq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * g_pp + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * g_qq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  if (off_norm() > target) {
    throw NoConvergence("hermitian_eig: Jacobi sweeps did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const Spectrum spec = hermitian_eig(m);
  const std::size_t n = m.rows();
  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = spec.eigenvalues[k];
    if (lambda < -kPsdRejectTolerance) {
      throw NotPSD("psd_sqrt: eigenvalue " + std::to_string(lambda) + " is negative");
    }
    roots[k] = std::sqrt(std::max(lambda, 0.0));
  }
  ComplexMatrix r(n, n);
  const ComplexMatrix& v = spec.eigenvectors;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += v(i, k) * roots[k] * std::conj(v(j, k));
      r(i, j) = acc;
      r(j, i) = std::conj(acc);
    }
    r(i, i) = r(i, i).real();
  }
  return r;
}

ComplexMatrix expm(const ComplexMatrix& m) {
  require_square(m, "expm");
  if (m.rows() > kMaxDimension) throw InvalidArgument("expm: dimension exceeds 81");
  for (const Complex& z : m.entries()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidArgument("expm: non-finite entry");
    }
  }

  const std::size_t n = m.rows();
  const double norm = max_row_sum_norm(m);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const ComplexMatrix scaled = m * Complex(std::ldexp(1.0, -squarings));

  // With ||scaled|| <= 1/2 the Taylor tail after 30 terms is far below eps.
  ComplexMatrix result = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = term * scaled;
    term *= Complex(1.0 / k);
    result += term;
    if (max_abs(term) <= 1e-18 * max_abs(result)) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace vicsim
