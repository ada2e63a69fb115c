#include "ccnlab/collapse_model.hpp"

#include <cmath>
#include <stdexcept>

#include "ccnlab/rng.hpp"

namespace ccnlab {

namespace {

void check_params(const CollapseParams& p) {
  if (p.lambda < 0 || p.sigma < 1 || p.delta < 0 || p.p_hit < 0 || p.p_hit > 1) {
    throw std::invalid_argument("collapse parameters out of range");
  }
}

}  // namespace

double collapse_prob_general(const CollapseParams& p) {
  check_params(p);
  // -expm1(-x) keeps the numerator accurate for tiny delta*lambda.
  double x = p.delta * p.lambda;
  double numerator = -std::expm1(-x);
  double denominator = 1.0 - (1.0 - 1.0 / p.sigma) * std::exp(-x);
  return numerator / denominator;
}

double collapse_prob_single(const CollapseParams& p) {
  check_params(p);
  return (1.0 - p.p_hit) * -std::expm1(-p.delta * p.lambda);
}

double delta_from_path(const PathSpec& path) {
  if (path.per_hop_hit && path.per_hop_hit->size() != path.links.size()) {
    throw std::invalid_argument("per_hop_hit length must match link count");
  }
  double one_way = 0;
  for (std::size_t i = 0; i < path.links.size(); ++i) {
    const PathLink& link = path.links[i];
    if (link.length_m <= 0 || link.alpha <= 0 || link.alpha > 1) {
      throw std::invalid_argument("link length must be positive and alpha in (0, 1]");
    }
    double hop_delay = link.length_m / (link.alpha * kSpeedOfLight);
    if (path.per_hop_hit) hop_delay *= 1.0 - (*path.per_hop_hit)[i];
    one_way += hop_delay;
  }
  return 2.0 * one_way;
}

double collapse_prob_over_path(double lambda, double p_hit, const PathSpec& path) {
  if (lambda < 0 || p_hit < 0 || p_hit > 1) {
    throw std::invalid_argument("collapse parameters out of range");
  }
  // prod_i e^(-l_i/alpha_i) == e^(-sum), then raised to 2*lambda/c; the sum
  // is exponentiated only after the tiny 2*lambda/c factor is applied.
  double scaled_length = 0;
  for (const PathLink& link : path.links) {
    if (link.length_m <= 0 || link.alpha <= 0 || link.alpha > 1) {
      throw std::invalid_argument("link length must be positive and alpha in (0, 1]");
    }
    scaled_length += link.length_m / link.alpha;
  }
  double exponent = scaled_length * (2.0 * lambda / kSpeedOfLight);
  return (1.0 - p_hit) * -std::expm1(-exponent);
}

std::vector<double> zipf_rates(std::size_t num_classes, double lambda_1) {
  if (num_classes == 0) throw std::invalid_argument("need at least one class");
  std::vector<double> rates(num_classes);
  double rate = lambda_1;
  for (std::size_t k = 0; k < num_classes; ++k) {
    rates[k] = rate;
    rate /= 2.0;  // exact in binary floating point
  }
  return rates;
}

CollapseEstimate monte_carlo_collapse(const CollapseParams& p, std::uint64_t trials,
                                      std::uint64_t seed) {
  check_params(p);
  if (trials == 0) throw std::invalid_argument("need at least one trial");

  const double survive = 1.0 - 1.0 / p.sigma;
  constexpr std::uint64_t kChunk = 1 << 16;
  std::uint64_t collapsed = 0;

  for (std::uint64_t start = 0; start < trials; start += kChunk) {
    Rng rng(derive_seed(seed, "mc-collapse", start / kChunk));
    std::uint64_t end = std::min(trials, start + kChunk);
    for (std::uint64_t t = start; t < end; ++t) {
      double gap = rng.exponential(p.lambda);
      bool miss = !rng.bernoulli(p.p_hit);
      if (p.delta <= 0) continue;  // no window, nothing pending
      bool alive = true;
      // Window boundaries crossed since the previous arrival; the pending
      // stream must survive each one for the segments to still line up.
      double boundaries = std::floor(gap / p.delta);
      if (boundaries > 1e6) {
        alive = false;  // survival odds below any representable threshold
      } else {
        for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(boundaries); ++b) {
          if (!rng.bernoulli(survive)) {
            alive = false;
            break;
          }
        }
      }
      if (miss && alive) ++collapsed;
    }
  }

  CollapseEstimate est;
  est.trials = trials;
  est.probability = static_cast<double>(collapsed) / static_cast<double>(trials);
  est.stderr_ = std::sqrt(est.probability * (1.0 - est.probability) / static_cast<double>(trials));
  return est;
}

}  // namespace ccnlab
