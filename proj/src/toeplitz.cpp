#include "wigner/toeplitz.hpp"

#include "wigner/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace wigner {

namespace {

struct FftwBuffer {
  explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {}
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  void* ptr;
};

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// FFTW planning is not thread-safe; execution on fresh arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(int n) {
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  FftwBuffer real(sizeof(double) * n);
  FftwBuffer spec(sizeof(fftw_complex) * (n / 2 + 1));
  PlanPair p;
  p.forward = fftw_plan_dft_r2c_1d(n, static_cast<double*>(real.ptr),
                                   static_cast<fftw_complex*>(spec.ptr), FFTW_ESTIMATE);
  p.backward = fftw_plan_dft_c2r_1d(n, static_cast<fftw_complex*>(spec.ptr),
                                    static_cast<double*>(real.ptr), FFTW_ESTIMATE);
  return cache.emplace(n, p).first->second;
}

int next_power_of_two(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

ToeplitzOperator::ToeplitzOperator(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty() || coefficients_.size() % 2 == 0)
    throw Error(ErrorCode::ShapeMismatch, "Toeplitz coefficients must have odd length 2n-1");
  size_ = static_cast<int>((coefficients_.size() + 1) / 2);
  fft_size_ = next_power_of_two(2 * size_);
  const int n = fft_size_;
  const PlanPair& plans = plans_for(n);
  FftwBuffer real(sizeof(double) * n);
  FftwBuffer spec(sizeof(fftw_complex) * (n / 2 + 1));
  auto* in = static_cast<double*>(real.ptr);
  auto* out = static_cast<fftw_complex*>(spec.ptr);
  std::fill(in, in + n, 0.0);
  // First column of the circulant: c_0, c_1, ..., c_{size-1}, 0..., c_{-(size-1)}, ..., c_{-1}.
  for (int k = 0; k < size_; ++k) in[k] = coefficient(k);
  for (int k = 1; k < size_; ++k) in[n - k] = coefficient(-k);
  fftw_execute_dft_r2c(plans.forward, in, out);
  kernel_spectrum_.resize(n / 2 + 1);
  for (int i = 0; i <= n / 2; ++i) kernel_spectrum_[i] = {out[i][0], out[i][1]};
}

Eigen::MatrixXd ToeplitzOperator::dense() const {
  Eigen::MatrixXd m(size_, size_);
  for (int r = 0; r < size_; ++r)
    for (int c = 0; c < size_; ++c) m(r, c) = entry(r, c);
  return m;
}

std::vector<double> ToeplitzOperator::apply(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != size_)
    throw Error(ErrorCode::ShapeMismatch, "Toeplitz apply: vector of length " +
                                              std::to_string(u.size()) + ", expected " +
                                              std::to_string(size_));
  const int n = fft_size_;
  const PlanPair& plans = plans_for(n);
  FftwBuffer real(sizeof(double) * n);
  FftwBuffer spec(sizeof(fftw_complex) * (n / 2 + 1));
  auto* in = static_cast<double*>(real.ptr);
  auto* out = static_cast<fftw_complex*>(spec.ptr);
  std::fill(in, in + n, 0.0);
  std::copy(u.begin(), u.end(), in);
  fftw_execute_dft_r2c(plans.forward, in, out);
  for (int i = 0; i <= n / 2; ++i) {
    const std::complex<double> z = std::complex<double>{out[i][0], out[i][1]} * kernel_spectrum_[i];
    out[i][0] = z.real();
    out[i][1] = z.imag();
  }
  fftw_execute_dft_c2r(plans.backward, out, in);
  std::vector<double> result(in, in + size_);
  const double scale = 1.0 / n;
  for (double& x : result) x *= scale;
  return result;
}

Eigen::VectorXd ToeplitzOperator::apply(const Eigen::VectorXd& u) const {
  const std::vector<double> r = apply(std::span<const double>(u.data(), u.size()));
  return Eigen::Map<const Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size()));
}

std::vector<double> ToeplitzOperator::apply_dense(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != size_)
    throw Error(ErrorCode::ShapeMismatch, "Toeplitz apply_dense: shape mismatch");
  std::vector<double> result(size_, 0.0);
  for (int r = 0; r < size_; ++r) {
    double s = 0.0;
    for (int c = 0; c < size_; ++c) s += entry(r, c) * u[c];
    result[r] = s;
  }
  return result;
}

double ToeplitzOperator::skew_defect() const {
  double worst = 0.0;
  for (int k = 0; k < size_; ++k)
    worst = std::max(worst, std::abs(coefficient(k) + coefficient(-k)));
  return worst;
}

}  // namespace wigner
