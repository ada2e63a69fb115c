#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace ccnlab {

/// Speed of light in vacuum, m/s. Link propagation speed is alpha * c.
inline constexpr double kSpeedOfLight = 3.0e8;

/// Inputs of the interest-collapsing probability model at a consumer-facing
/// router: Poisson arrival rate per content class, mean segments per
/// content, the collapse window delta (entry creation to content arrival),
/// and the router's cache hit probability for the class.
struct CollapseParams {
  double lambda = 0;   // arrivals per second, >= 0
  double sigma = 1;    // mean segments per content, >= 1
  double delta = 0;    // collapse window, seconds, >= 0
  double p_hit = 0;    // cache hit probability in [0, 1]
};

/// One link of a consumer-to-producer path: physical length and the medium
/// factor alpha in (0, 1] that scales propagation speed.
struct PathLink {
  double length_m = 0;
  double alpha = 1.0;
};

struct PathSpec {
  std::vector<PathLink> links;
  /// Per-hop cache hit probabilities; when present the collapse window is
  /// the cache-attenuated round trip 2 * sum(delta_i * (1 - p_i)).
  std::optional<std::vector<double>> per_hop_hit;
};

/// Collapse probability for multi-segment content, cache ignored:
///   (1 - e^(-delta*lambda)) / (1 - (1 - 1/sigma) * e^(-delta*lambda)).
double collapse_prob_general(const CollapseParams& p);

/// Single-segment collapse probability attenuated by the local cache:
///   (1 - p_hit) * (1 - e^(-delta*lambda)).
double collapse_prob_single(const CollapseParams& p);

/// Collapse window implied by a path: 2 * sum(l_i / (alpha_i * c)), or the
/// cache-attenuated form when per-hop hit probabilities are given.
double delta_from_path(const PathSpec& path);

/// Path-product form of the single-segment probability:
///   (1 - p_hit) * (1 - (prod_i e^(-l_i/alpha_i))^(2*lambda/c)).
/// Evaluated in log space (the literal per-link product underflows for
/// metre-scale lengths); algebraically identical to
/// collapse_prob_single with delta_from_path, which tests assert to 1e-12.
double collapse_prob_over_path(double lambda, double p_hit, const PathSpec& path);

/// Class arrival rates under popularity halving: rate(k+1) = rate(k) / 2.
std::vector<double> zipf_rates(std::size_t num_classes, double lambda_1);

struct CollapseEstimate {
  double probability = 0;
  double stderr_ = 0;
  std::uint64_t trials = 0;
};

/// Event-driven Monte-Carlo estimate of the collapse probability. Each trial
/// draws one Poisson inter-arrival; the arrival collapses iff it misses the
/// cache and the pending stream anchored at the previous arrival is still
/// alive, where the stream advances one segment per delta window and
/// survives each window boundary with probability 1 - 1/sigma. Deterministic
/// for a given seed; trials are seeded in fixed-size chunks so partitioned
/// execution reproduces the serial result.
CollapseEstimate monte_carlo_collapse(const CollapseParams& p, std::uint64_t trials,
                                      std::uint64_t seed);

}  // namespace ccnlab
