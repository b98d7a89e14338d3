#include "convolution.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace szegolab::detail {

namespace {

// FFTW's planner is not thread-safe; creation/destruction is serialized.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

struct Convolver::Fft {
  int len = 0;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  std::vector<Complex> in, freq_a, freq_w, out;

  explicit Fft(int l) : len(l), in(l), freq_a(l), freq_w(l), out(l) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    forward = fftw_plan_dft_1d(len, reinterpret_cast<fftw_complex*>(in.data()),
                               reinterpret_cast<fftw_complex*>(freq_a.data()),
                               FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_1d(len, reinterpret_cast<fftw_complex*>(freq_w.data()),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!forward || !backward) throw std::runtime_error("fftw plan creation failed");
  }
  ~Fft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }

  void transform(const std::vector<Complex>& a, std::vector<Complex>& freq) {
    std::copy(a.begin(), a.end(), in.begin());
    std::fill(in.begin() + static_cast<long>(a.size()), in.end(), Complex{});
    fftw_execute_dft(forward, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(freq.data()));
  }

  void inverse(std::vector<Complex>& res) {
    fftw_execute_dft(backward, reinterpret_cast<fftw_complex*>(freq_w.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const double inv = 1.0 / len;
    for (auto& v : out) v *= inv;
    res = out;
  }
};

Convolver::Convolver(int nmax, bool use_transform)
    : n_(nmax), use_transform_(use_transform) {
  if (nmax < 1) throw std::invalid_argument("Convolver needs nmax >= 1");
  if (use_transform_) fft_ = std::make_unique<Fft>(next_pow2(3 * nmax));
}

Convolver::~Convolver() = default;
Convolver::Convolver(Convolver&&) noexcept = default;
Convolver& Convolver::operator=(Convolver&&) noexcept = default;

void Convolver::self_convolution(const std::vector<Complex>& a,
                                 std::vector<Complex>& w) const {
  const int n = n_;
  w.assign(2 * n - 1, Complex{});
  if (use_transform_) {
    fft_->transform(a, fft_->freq_a);
    for (int i = 0; i < fft_->len; ++i) fft_->freq_w[i] = fft_->freq_a[i] * fft_->freq_a[i];
    fft_->inverse(buf_c_);
    std::copy(buf_c_.begin(), buf_c_.begin() + (2 * n - 1), w.begin());
    return;
  }
  for (int k = 0; k < n; ++k) {
    const Complex ak = a[k];
    if (ak == Complex{}) continue;
    for (int l = 0; l < n; ++l) w[k + l] += ak * a[l];
  }
}

void Convolver::core(const std::vector<Complex>& a, std::vector<Complex>& out) const {
  const int n = n_;
  out.assign(n, Complex{});
  if (use_transform_) {
    // corr(a*a, conj(a))_j = IDFT( F(a)^2 conj(F(a)) )_j for j = 0..n-1;
    // the padded length >= 3n keeps circular wrap-around out of that range.
    fft_->transform(a, fft_->freq_a);
    for (int i = 0; i < fft_->len; ++i) {
      const Complex fa = fft_->freq_a[i];
      fft_->freq_w[i] = fa * fa * std::conj(fa);
    }
    fft_->inverse(buf_c_);
    std::copy(buf_c_.begin(), buf_c_.begin() + n, out.begin());
    return;
  }
  self_convolution(a, buf_a_);
  for (int j = 0; j < n; ++j) {
    Complex acc{};
    for (int m = 0; m < n; ++m) acc += buf_a_[j + m] * std::conj(a[m]);
    out[j] = acc;
  }
}

}  // namespace szegolab::detail
