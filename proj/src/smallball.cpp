#include "gaussdil/smallball.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "gaussdil/linalg.hpp"
#include "gaussdil/rng.hpp"

namespace gaussdil {

namespace {

constexpr std::uint64_t kMinMedianSamples = 10000;

// Deterministic chunked parallel fill: fn(i) writes only to slot i.
template <class F>
void parallel_fill(std::uint64_t total, int threads, F&& fn) {
  constexpr std::uint64_t kChunk = 16384;
  const std::uint64_t chunks = (total + kChunk - 1) / kChunk;
  if (threads <= 1 || chunks <= 1) {
    for (std::uint64_t i = 0; i < total; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      const std::uint64_t end = std::min(total, (c + 1) * kChunk);
      for (std::uint64_t i = c * kChunk; i < end; ++i) fn(i);
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), chunks));
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

std::string model_id(const GaussianVectorModel& model) {
  return "GaussianVectorModel(n=" + std::to_string(model.vector_count()) +
         ",m=" + std::to_string(model.space_dim()) +
         ",norm=" + norm_tag_name(model.norm()) + ")";
}

// Norms of `samples` independent realizations of X, in sample order.
std::vector<double> sampled_norms(const GaussianVectorModel& model,
                                  RngStream stream, std::uint64_t samples,
                                  std::uint64_t seed, int threads) {
  std::vector<double> norms(samples);
  const std::size_t n = static_cast<std::size_t>(model.vector_count());
  const std::size_t m = static_cast<std::size_t>(model.space_dim());
  parallel_fill(samples, threads, [&](std::uint64_t i) {
    thread_local std::vector<double> g, x;
    g.resize(n);
    x.resize(m);
    model.draw(seed, stream, i, g, x);
    norms[i] = model.norm_of(x);
  });
  return norms;
}

double integrability_threshold(double median, double sigma) {
  return std::min(-1.0, -median * median / (4.0 * sigma * sigma));
}

}  // namespace

GaussianVectorModel::GaussianVectorModel(std::vector<std::vector<double>> vectors,
                                         NormTag norm)
    : vectors_(std::move(vectors)), norm_(norm) {
  if (vectors_.empty()) {
    throw std::invalid_argument("GaussianVectorModel: need at least one vector");
  }
  n_ = static_cast<int>(vectors_.size());
  m_ = static_cast<int>(vectors_.front().size());
  if (m_ < 1) {
    throw std::invalid_argument("GaussianVectorModel: vectors must be nonempty");
  }
  bool any_nonzero = false;
  for (const auto& v : vectors_) {
    if (static_cast<int>(v.size()) != m_) {
      throw std::invalid_argument(
          "GaussianVectorModel: vectors must share one dimension");
    }
    for (double c : v) {
      if (!std::isfinite(c)) {
        throw std::invalid_argument("GaussianVectorModel: non-finite entry");
      }
      if (c != 0.0) any_nonzero = true;
    }
  }
  if (!any_nonzero) {
    throw std::invalid_argument("GaussianVectorModel: all vectors are zero");
  }
  covariance_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
  for (const auto& v : vectors_) {
    for (int a = 0; a < m_; ++a) {
      for (int b = 0; b < m_; ++b) {
        covariance_[static_cast<std::size_t>(a) * m_ + b] += v[a] * v[b];
      }
    }
  }
}

double GaussianVectorModel::norm_of(std::span<const double> v) const {
  if (static_cast<int>(v.size()) != m_) {
    throw std::invalid_argument("norm_of: dimension mismatch");
  }
  double acc = 0.0;
  switch (norm_) {
    case NormTag::l1:
      for (double c : v) acc += std::abs(c);
      return acc;
    case NormTag::l2:
      for (double c : v) acc += c * c;
      return std::sqrt(acc);
    case NormTag::linf:
      for (double c : v) acc = std::max(acc, std::abs(c));
      return acc;
  }
  throw std::logic_error("norm_of: bad tag");
}

void GaussianVectorModel::draw(std::uint64_t seed, RngStream stream,
                               std::uint64_t index, std::span<double> g_buf,
                               std::span<double> out) const {
  if (static_cast<int>(g_buf.size()) != n_ ||
      static_cast<int>(out.size()) != m_) {
    throw std::invalid_argument("draw: buffer size mismatch");
  }
  standard_normals(seed, stream, index, 0, g_buf);
  std::fill(out.begin(), out.end(), 0.0);
  for (int i = 0; i < n_; ++i) {
    const double g = g_buf[i];
    const std::vector<double>& x = vectors_[static_cast<std::size_t>(i)];
    for (int j = 0; j < m_; ++j) out[j] += g * x[j];
  }
}

GaussianVectorModel GaussianVectorModel::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("scaled: factor must be positive and finite");
  }
  std::vector<std::vector<double>> vs = vectors_;
  for (auto& v : vs) {
    for (double& e : v) e *= c;
  }
  return GaussianVectorModel(std::move(vs), norm_);
}

GaussianVectorModel GaussianVectorModel::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vectors") || !j.contains("norm")) {
    throw std::invalid_argument(
        "model config: expected object with 'vectors' and 'norm'");
  }
  return GaussianVectorModel(
      j.at("vectors").get<std::vector<std::vector<double>>>(),
      norm_tag_from_name(j.at("norm").get<std::string>()));
}

GaussianVectorModel GaussianVectorModel::from_json_text(const std::string& text) {
  return from_json(nlohmann::json::parse(text));
}

nlohmann::json GaussianVectorModel::to_json() const {
  return {{"vectors", vectors_}, {"norm", norm_tag_name(norm_)}};
}

double median_norm(const GaussianVectorModel& model, std::uint64_t samples,
                   std::uint64_t seed, int threads) {
  if (samples < kMinMedianSamples) {
    throw std::invalid_argument("median_norm: samples must be >= 10000");
  }
  std::vector<double> norms = sampled_norms(model, RngStream::smallball_median,
                                            samples, seed, threads);
  const std::size_t upper = norms.size() / 2;
  std::nth_element(norms.begin(), norms.begin() + upper, norms.end());
  const double hi = norms[upper];
  if (norms.size() % 2 == 1) return hi;
  // Even count: midpoint of the two central order statistics.
  const double lo =
      *std::max_element(norms.begin(), norms.begin() + upper);
  return 0.5 * (lo + hi);
}

double weak_variance(const GaussianVectorModel& model) {
  const int m = model.space_dim();
  const std::vector<double>& cov = model.covariance();
  switch (model.norm()) {
    case NormTag::l2:
      return std::sqrt(std::max(0.0, sym_eig_max(cov, m)));
    case NormTag::linf: {
      double best = 0.0;
      for (int j = 0; j < m; ++j) {
        best = std::max(best, cov[static_cast<std::size_t>(j) * m + j]);
      }
      return std::sqrt(best);
    }
    case NormTag::l1: {
      if (m > 20) {
        throw std::invalid_argument(
            "weak_variance: l1 dual enumeration is exact only up to m = 20 "
            "(2^(m-1) sign patterns)");
      }
      // Dual ball of l1 is the sign cube; the quadratic form is maximized at
      // a vertex. Fixing e_0 = +1 halves the search by symmetry.
      double best = 0.0;
      std::vector<double> e(static_cast<std::size_t>(m), 1.0);
      const std::uint64_t count = 1ull << (m - 1);
      for (std::uint64_t mask = 0; mask < count; ++mask) {
        for (int i = 1; i < m; ++i) {
          e[static_cast<std::size_t>(i)] = (mask >> (i - 1)) & 1 ? -1.0 : 1.0;
        }
        double quad = 0.0;
        for (int i = 0; i < m; ++i) {
          double gi = 0.0;
          for (int j = 0; j < m; ++j) {
            gi += cov[static_cast<std::size_t>(i) * m + j] * e[j];
          }
          quad += e[static_cast<std::size_t>(i)] * gi;
        }
        best = std::max(best, quad);
      }
      return std::sqrt(best);
    }
  }
  throw std::logic_error("weak_variance: bad tag");
}

SmallBallReport check_theorem4(const GaussianVectorModel& model,
                               std::span<const double> t_grid,
                               std::uint64_t samples, std::uint64_t seed,
                               int threads) {
  if (t_grid.empty()) {
    throw std::invalid_argument("check_theorem4: empty t grid");
  }
  double prev = 0.0;
  for (double t : t_grid) {
    if (!(t > 0.0 && t <= 1.0) || !(t > prev)) {
      throw std::invalid_argument(
          "check_theorem4: t grid must be increasing within (0, 1]");
    }
    prev = t;
  }
  SmallBallReport report;
  report.median = median_norm(model, std::max(samples, kMinMedianSamples), seed,
                              threads);
  report.sigma = weak_variance(model);
  report.t_grid.assign(t_grid.begin(), t_grid.end());
  const double exponent =
      report.median * report.median / (4.0 * report.sigma * report.sigma);
  const std::vector<double> norms = sampled_norms(
      model, RngStream::smallball_draw, samples, seed, threads);
  const std::string id = model_id(model);
  for (double t : t_grid) {
    const double cutoff = t * report.median;
    std::uint64_t count = 0;
    for (double nm : norms) count += nm <= cutoff ? 1 : 0;
    MonteCarloEstimate est;
    est.samples = samples;
    est.seed = seed;
    est.mean = static_cast<double>(count) / static_cast<double>(samples);
    const double var = (static_cast<double>(count) -
                        static_cast<double>(count) * est.mean) /
                       (static_cast<double>(samples) - 1.0);
    est.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(samples));
    const double bound = 0.5 * std::pow(2.0 * t, exponent);
    report.mc_probs.push_back(est);
    report.bound.push_back(bound);
    report.checks.push_back(make_bound_check("theorem4", {{"t", t}}, id,
                                             est.mean, bound, est.std_error));
  }
  return report;
}

MomentResult moment(const GaussianVectorModel& model, double p,
                    std::uint64_t samples, std::uint64_t seed, int threads) {
  if (samples < 1000) {
    throw std::invalid_argument("moment: samples must be >= 1000");
  }
  if (!(p > -1.0)) {
    // Negative moments past -1 exist only while the small-ball exponent
    // keeps ||X||^p integrable near zero.
    const double med = median_norm(model, std::max(samples, kMinMedianSamples),
                                   seed, threads);
    const double sigma = weak_variance(model);
    const double threshold = integrability_threshold(med, sigma);
    if (!(p > threshold)) {
      throw std::domain_error(
          "moment: p = " + std::to_string(p) +
          " is outside the integrability range (threshold " +
          std::to_string(threshold) + ")");
    }
  }
  const std::size_t n = static_cast<std::size_t>(model.vector_count());
  const std::size_t m = static_cast<std::size_t>(model.space_dim());
  const McAccum acc = mc_reduce(samples, threads, [&](std::uint64_t i) {
    thread_local std::vector<double> g, x;
    g.resize(n);
    x.resize(m);
    model.draw(seed, RngStream::moment_draw, i, g, x);
    const double nm = model.norm_of(x);
    return p == 0.0 ? std::log(nm) : std::pow(nm, p);
  });
  MomentResult res;
  res.p = p;
  res.raw.samples = samples;
  res.raw.seed = seed;
  res.raw.mean = acc.sum / static_cast<double>(samples);
  const double var =
      std::max(0.0, (acc.sum_sq - acc.sum * res.raw.mean) /
                        (static_cast<double>(samples) - 1.0));
  res.raw.std_error = std::sqrt(var / static_cast<double>(samples));
  res.value =
      p == 0.0 ? std::exp(res.raw.mean) : std::pow(res.raw.mean, 1.0 / p);
  return res;
}

BoundCheckResult check_corollary(const GaussianVectorModel& model, double p,
                                 double q, std::uint64_t samples,
                                 std::uint64_t seed, int threads) {
  if (!(p > q)) {
    throw std::domain_error("check_corollary: need p > q");
  }
  if (!(q > -1.0)) {
    const double med = median_norm(model, std::max(samples, kMinMedianSamples),
                                   seed, threads);
    const double sigma = weak_variance(model);
    const double threshold = integrability_threshold(med, sigma);
    if (!(q > threshold)) {
      throw std::domain_error(
          "check_corollary: q = " + std::to_string(q) +
          " is outside the integrability range (threshold " +
          std::to_string(threshold) + ")");
    }
  }
  const MomentResult mp = moment(model, p, samples, seed, threads);
  const MomentResult mq = moment(model, q, samples, seed, threads);
  const double ratio = mp.value / mq.value;

  const GaussianVectorModel doubled = model.scaled(2.0);
  const MomentResult mp2 = moment(doubled, p, samples, seed, threads);
  const MomentResult mq2 = moment(doubled, q, samples, seed, threads);
  const double ratio2 = mp2.value / mq2.value;

  // The ratio is 0-homogeneous: the doubled model must reproduce it to
  // rounding error. Failures here mean a seed or scaling leak.
  BoundCheckResult r;
  r.inequality = "corollary1";
  r.params = {{"p", p}, {"q", q}};
  r.body = model_id(model);
  r.lhs = ratio;
  r.rhs = ratio2;
  r.margin = ratio2 - ratio;
  r.uncertainty = 0.0;
  r.pass = std::isfinite(ratio) && std::isfinite(ratio2) &&
           std::abs(ratio2 - ratio) <= 1e-10;
  return r;
}

InducedBody induced_body(const GaussianVectorModel& model, double level) {
  if (!(level > 0.0) || !std::isfinite(level)) {
    throw std::invalid_argument("induced_body: level must be > 0");
  }
  const int n = model.vector_count();
  const int m = model.space_dim();
  const auto& xs = model.vectors();
  // Row j of the induced matrix collects coordinate j across the x_i, so
  // that ||sum_i xi_i x_i|| < level reads ||A xi|| < level.
  auto matrix_row = [&](int j) {
    std::vector<double> r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      r[static_cast<std::size_t>(i)] =
          xs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return r;
  };

  InducedBody out{Slab(1, level), 0.0, 0.0, 0.0};
  out.sigma = weak_variance(model);
  out.level = level;
  out.inradius_lower = level / out.sigma;

  if (model.norm() == NormTag::linf) {
    // |<row_j, xi>| < level per coordinate: a slab intersection. Rows that
    // are identically zero constrain nothing and are dropped.
    std::vector<SlabConstraint> cs;
    for (int j = 0; j < m; ++j) {
      std::vector<double> r = matrix_row(j);
      double len = 0.0;
      for (double v : r) len += v * v;
      len = std::sqrt(len);
      if (len == 0.0) continue;
      SlabConstraint c;
      c.halfwidth = level / len;
      for (double& v : r) v /= len;
      c.direction = std::move(r);
      cs.push_back(std::move(c));
    }
    out.body = SlabPolytope(n, std::move(cs));
    return out;
  }

  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(m) * n);
  for (int j = 0; j < m; ++j) {
    const std::vector<double> r = matrix_row(j);
    flat.insert(flat.end(), r.begin(), r.end());
  }
  out.body = NormPreimage(n, m, model.norm(), level, std::move(flat));
  return out;
}

}  // namespace gaussdil
