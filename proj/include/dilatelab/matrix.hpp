#ifndef DILATELAB_MATRIX_HPP
#define DILATELAB_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace dilatelab {

using cplx = std::complex<double>;

// Base of everything thrown by the library. InputError maps to CLI exit
// code 2, NumericError (and subclasses) to exit code 3.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InputError : public Error {
public:
  using Error::Error;
};

class SchemaError : public InputError {
public:
  SchemaError(const std::string& pointer, const std::string& msg)
      : InputError(pointer + ": " + msg), pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

private:
  std::string pointer_;
};

class NumericError : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public NumericError {
public:
  using NumericError::NumericError;
};

class NotHermitian : public NumericError {
public:
  using NumericError::NumericError;
};

class IndefiniteMatrix : public NumericError {
public:
  using NumericError::NumericError;
};

class NotContractive : public NumericError {
public:
  NotContractive(std::size_t index, double norm)
      : NumericError("operator " + std::to_string(index + 1) +
                     " is not a contraction (norm " + std::to_string(norm) + ")"),
        index(index), norm(norm) {}
  std::size_t index;
  double norm;
};

class NotCommuting : public NumericError {
public:
  NotCommuting(std::size_t i, std::size_t j, double residual)
      : NumericError("operators " + std::to_string(i + 1) + " and " +
                     std::to_string(j + 1) + " do not commute (residual " +
                     std::to_string(residual) + ")"),
        i(i), j(j), residual(residual) {}
  std::size_t i;
  std::size_t j;
  double residual;
};

class WrongSpace : public NumericError {
public:
  using NumericError::NumericError;
};

class ConditionsNotMet : public NumericError {
public:
  ConditionsNotMet(const std::string& msg, std::string condition_id, double residual)
      : NumericError(msg), condition_id(std::move(condition_id)), residual(residual) {}
  std::string condition_id;
  double residual;
};

class InvalidModelData : public NumericError {
public:
  using NumericError::NumericError;
};

class SingularResolvent : public NumericError {
public:
  using NumericError::NumericError;
};

class NotC0 : public NumericError {
public:
  using NumericError::NumericError;
};

// Absolute tolerance applied to operator norms of residuals.
struct Tolerance {
  double atol = 1e-10;

  Tolerance() = default;
  explicit Tolerance(double a) : atol(a) {
    if (!(atol > 0.0)) throw InputError("tolerance must be positive");
  }
};

// Dense complex matrix, row-major. The universal carrier for operators
// between finite-dimensional spaces; column vectors are n x 1 matrices.
class ComplexMatrix {
public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cplx(0.0, 0.0)) {}
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix diag(const std::vector<cplx>& d);
  static ComplexMatrix column(const std::vector<cplx>& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  const std::vector<cplx>& data() const { return a_; }
  std::vector<cplx>& data() { return a_; }

  ComplexMatrix adjoint() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  ComplexMatrix operator*(const ComplexMatrix& b) const;  // kernels::matmul

  bool operator==(const ComplexMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;
  void require_finite(const std::string& what) const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> a_;
};

namespace kernels {

// matmul_serial is the reference implementation; matmul_parallel is the
// OpenMP kernel. Both compute each output entry with the same summation
// order, so results are bit-identical and independent of the thread count.
void matmul_serial(const cplx* a, const cplx* b, cplx* c,
                   std::size_t m, std::size_t k, std::size_t n);
void matmul_parallel(const cplx* a, const cplx* b, cplx* c,
                     std::size_t m, std::size_t k, std::size_t n);

ComplexMatrix matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix matmul_parallel(const ComplexMatrix& a, const ComplexMatrix& b);

// Flop threshold below which the serial kernel is used directly.
inline constexpr std::size_t kParallelFlopThreshold = std::size_t(1) << 21;

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace kernels

// Inner product linear in the first argument: sum_i x_i * conj(y_i).
cplx inner(const ComplexMatrix& x, const ComplexMatrix& y);
double vec_norm(const ComplexMatrix& x);

}  // namespace dilatelab

#endif
