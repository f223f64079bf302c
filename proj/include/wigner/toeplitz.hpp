#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace wigner {

/// Square Toeplitz operator T_{nm} = c_{n-m} of dimension `size`, applied through a
/// circulant embedding and real FFTs.
class ToeplitzOperator {
 public:
  ToeplitzOperator() = default;

  /// `coefficients[k + size - 1]` holds c_k for k in [-(size-1), size-1].
  explicit ToeplitzOperator(std::vector<double> coefficients);

  int size() const { return size_; }
  double coefficient(int k) const { return coefficients_[k + size_ - 1]; }
  double entry(int row, int col) const { return coefficient(row - col); }
  const std::vector<double>& coefficients() const { return coefficients_; }

  Eigen::MatrixXd dense() const;

  /// Fast product, O(n log n).
  std::vector<double> apply(std::span<const double> u) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& u) const;

  /// Reference product through explicit entries.
  std::vector<double> apply_dense(std::span<const double> u) const;

  /// max |T + T^T| over all entries; zero for a skew-symmetric operator.
  double skew_defect() const;

 private:
  int size_ = 0;
  int fft_size_ = 0;
  std::vector<double> coefficients_;
  std::vector<std::complex<double>> kernel_spectrum_;
};

}  // namespace wigner
