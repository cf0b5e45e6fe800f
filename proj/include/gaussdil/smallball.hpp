#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gaussdil/bodies.hpp"
#include "gaussdil/bounds.hpp"
#include "gaussdil/measure.hpp"
#include "gaussdil/rng.hpp"

namespace gaussdil {

// The Gaussian vector X = sum_i x_i g_i with iid standard normals g_i,
// measured in one of the l1/l2/linf norms on R^m. The x_i live in R^m;
// the covariance C = sum_i x_i x_i^T is cached at construction.
class GaussianVectorModel {
 public:
  GaussianVectorModel(std::vector<std::vector<double>> vectors, NormTag norm);

  int vector_count() const { return n_; }
  int space_dim() const { return m_; }
  NormTag norm() const { return norm_; }
  const std::vector<std::vector<double>>& vectors() const { return vectors_; }
  const std::vector<double>& covariance() const { return covariance_; }

  double norm_of(std::span<const double> v) const;

  // Realizes X for logical sample `index`: draws n_ normals into g_buf and
  // writes the m_-dimensional value into out.
  void draw(std::uint64_t seed, RngStream stream, std::uint64_t index,
            std::span<double> g_buf, std::span<double> out) const;

  GaussianVectorModel scaled(double c) const;

  static GaussianVectorModel from_json(const nlohmann::json& j);
  static GaussianVectorModel from_json_text(const std::string& text);
  nlohmann::json to_json() const;

 private:
  std::vector<std::vector<double>> vectors_;
  NormTag norm_;
  int n_ = 0;  // number of Gaussian coefficients
  int m_ = 0;  // dimension of the normed space
  std::vector<double> covariance_;  // m_ x m_, row-major
};

// Empirical median of ||X|| over `samples` draws (midpoint of the two
// central order statistics when samples is even). samples >= 10^4.
double median_norm(const GaussianVectorModel& model, std::uint64_t samples,
                   std::uint64_t seed, int threads = 1);

// sigma = sup over the dual-norm unit ball of sqrt(f^T C f):
// l2 -> sqrt(lambda_max(C)); linf -> max_j sqrt(C_jj); l1 -> exact sign-vertex
// enumeration (2^{m-1} patterns, m capped at 20).
double weak_variance(const GaussianVectorModel& model);

struct SmallBallReport {
  double median = 0.0;
  double sigma = 0.0;
  std::vector<double> t_grid;
  std::vector<MonteCarloEstimate> mc_probs;
  std::vector<double> bound;  // (1/2) (2t)^{M^2 / 4 sigma^2}
  std::vector<BoundCheckResult> checks;
};

// P(||X|| <= t M) <= (1/2)(2t)^{M^2/4sigma^2} over t in (0, 1], with M the
// empirical median. MC side compared through its 99.7% upper bound.
SmallBallReport check_theorem4(const GaussianVectorModel& model,
                               std::span<const double> t_grid,
                               std::uint64_t samples, std::uint64_t seed,
                               int threads = 1);

// (E ||X||^p)^{1/p} for p != 0, exp(E ln ||X||) for p = 0. The estimate's
// mean/std_error describe the underlying moment mean (of ||X||^p or
// ln ||X||), and the returned `value` transform is applied by callers.
struct MomentResult {
  double value = 0.0;  // the p-norm itself
  MonteCarloEstimate raw;  // mean of ||X||^p (or ln ||X|| when p = 0)
  double p = 0.0;
};
MomentResult moment(const GaussianVectorModel& model, double p,
                    std::uint64_t samples, std::uint64_t seed, int threads = 1);

// Ratio ||X||_p / ||X||_q for p > q > min(-1, -M^2/4sigma^2); pass iff the
// ratio is finite and scale-invariant (model scaled by 2, same seed, agrees
// within 1e-10).
BoundCheckResult check_corollary(const GaussianVectorModel& model, double p,
                                 double q, std::uint64_t samples,
                                 std::uint64_t seed, int threads = 1);

struct InducedBody {
  Body body;
  double inradius_lower = 0.0;  // certified M / sigma
  double sigma = 0.0;
  double level = 0.0;
};

// K = {xi : ||sum_i x_i xi_i|| <= level} as a membership body in R^n, with
// the certificate w(K) >= level / sigma.
InducedBody induced_body(const GaussianVectorModel& model, double level);

}  // namespace gaussdil
