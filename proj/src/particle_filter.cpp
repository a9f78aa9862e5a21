#include "pfml/particle_filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pfml {

std::vector<double> exponential_range_weights(const std::vector<double>& ranges_m) {
  double inv_sum = 0.0;
  for (const double r : ranges_m) {
    if (r <= 0.0) throw std::invalid_argument("ranges must be positive");
    inv_sum += 1.0 / r;
  }
  std::vector<double> weights;
  weights.reserve(ranges_m.size());
  for (const double r : ranges_m) weights.push_back((1.0 / r) / inv_sum);
  return weights;
}

bool normalize_weights(std::vector<Particle>& particles) {
  double total = 0.0;
  for (const Particle& p : particles) total += p.weight;
  if (total <= 0.0) return false;
  for (Particle& p : particles) p.weight /= total;
  return true;
}

ParticleFilter::ParticleFilter(const FloorPlanGraph& graph, const FilterConfig& config)
    : graph_(&graph), config_(config), rng_(config.seed) {
  if (config.particles <= 0) throw std::invalid_argument("particle count must be positive");
  if (config.n_prime_pct < 0.0 || config.n_prime_pct > 100.0) {
    throw std::invalid_argument("n_prime_pct must be in [0, 100]");
  }
  if (graph.node_count() == 0) throw std::invalid_argument("empty graph");
  const size_t n = static_cast<size_t>(config.particles);
  const double w = 1.0 / static_cast<double>(n);
  particles_.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    particles_.push_back({static_cast<uint32_t>(rng_.below(graph.node_count())), w});
  }
}

void ParticleFilter::sample() {
  const size_t n = particles_.size();
  // Ascending by weight; stable keeps index order across the uniform-weight
  // ties that follow every resample.
  std::stable_sort(particles_.begin(), particles_.end(),
                   [](const Particle& a, const Particle& b) { return a.weight < b.weight; });

  const size_t reseed = static_cast<size_t>(
      std::floor(config_.n_prime_pct * static_cast<double>(n) / 100.0));
  for (size_t i = 0; i < reseed; ++i) {
    particles_[i].node = static_cast<uint32_t>(rng_.below(graph_->node_count()));
  }
  for (size_t i = reseed; i < n; ++i) {
    const auto nbrs = graph_->neighbors(particles_[i].node);
    // Uniform over the closed neighborhood: stay or move one hop.
    const uint64_t pick = rng_.below(nbrs.size() + 1);
    if (pick > 0) particles_[i].node = nbrs[pick - 1];
  }
}

bool ParticleFilter::update_weights(const ObservationBundle& bundle,
                                    const std::map<std::string, Vec2>& an_positions) {
  struct RangeObs {
    Vec2 anchor;
    double range;
    double sigma;
    double m;  // exponential likelihood weight
  };
  std::vector<RangeObs> obs;
  std::vector<double> ranges;
  obs.reserve(bundle.ranges_m.size());
  ranges.reserve(bundle.ranges_m.size());
  for (const auto& [an_id, range] : bundle.ranges_m) {
    const auto pos_it = an_positions.find(an_id);
    if (pos_it == an_positions.end()) {
      throw std::invalid_argument("ranging anchor '" + an_id + "' has no known position");
    }
    const auto sigma_it = bundle.sigma_m.find(an_id);
    if (sigma_it == bundle.sigma_m.end() || sigma_it->second <= 0.0) {
      throw std::invalid_argument("ranging anchor '" + an_id + "' needs sigma > 0");
    }
    obs.push_back({pos_it->second, range, sigma_it->second, 0.0});
    ranges.push_back(range);
  }
  if (!obs.empty()) {
    const std::vector<double> m = exponential_range_weights(ranges);
    for (size_t j = 0; j < obs.size(); ++j) obs[j].m = m[j];
  }

  // Log-space accumulation: prior, the m-weighted Gaussian range
  // likelihoods, then the room posterior at the particle's area.
  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> log_weight(particles_.size());
  for (size_t i = 0; i < particles_.size(); ++i) {
    const Particle& p = particles_[i];
    double lw = std::log(p.weight);
    const Vec2 pos = graph_->node_position(p.node);
    for (const RangeObs& o : obs) {
      const double residual = o.range - distance(pos, o.anchor);
      const double log_pdf =
          -0.5 * residual * residual / (o.sigma * o.sigma) - std::log(o.sigma * std::sqrt(2.0 * M_PI));
      lw += o.m * log_pdf;
    }
    const auto room_it = bundle.room_posterior.find(graph_->node_room(p.node));
    const double room_p = room_it != bundle.room_posterior.end() ? room_it->second : 0.0;
    lw += room_p > 0.0 ? std::log(room_p) : neg_inf;
    log_weight[i] = lw;
  }

  const double shift = *std::max_element(log_weight.begin(), log_weight.end());
  if (shift == neg_inf) {
    // Observation model excluded every particle; keep the filter alive.
    const double w = 1.0 / static_cast<double>(particles_.size());
    for (Particle& p : particles_) p.weight = w;
    return true;
  }
  for (size_t i = 0; i < particles_.size(); ++i) {
    particles_[i].weight = std::exp(log_weight[i] - shift);
  }
  normalize_weights(particles_);
  return false;
}

std::vector<Particle> systematic_resample(const std::vector<Particle>& particles, size_t n_out,
                                          double offset01) {
  if (particles.empty() || n_out == 0) throw std::invalid_argument("nothing to resample");
  if (offset01 < 0.0 || offset01 >= 1.0) throw std::invalid_argument("offset must be in [0, 1)");
  const double step = 1.0 / static_cast<double>(n_out);

  std::vector<Particle> offspring;
  offspring.reserve(n_out);
  size_t i = 0;
  double cumulative = particles[0].weight;
  for (size_t m = 0; m < n_out; ++m) {
    const double u = (offset01 + static_cast<double>(m)) * step;
    // Particle i owns [c_{i-1}, c_i), so a position exactly on the boundary
    // belongs to the next particle.
    while (u >= cumulative && i + 1 < particles.size()) {
      ++i;
      cumulative += particles[i].weight;
    }
    offspring.push_back({particles[i].node, step});
  }
  return offspring;
}

Vec2 weighted_centroid(const std::vector<Particle>& particles, const FloorPlanGraph& graph) {
  Vec2 est;
  for (const Particle& p : particles) {
    const Vec2 pos = graph.node_position(p.node);
    est.x += p.weight * pos.x;
    est.y += p.weight * pos.y;
  }
  return est;
}

void ParticleFilter::resample() {
  particles_ = systematic_resample(particles_, particles_.size(), rng_.uniform());
}

Vec2 ParticleFilter::estimate() const { return weighted_centroid(particles_, *graph_); }

StepResult ParticleFilter::step(const ObservationBundle& bundle,
                                const std::map<std::string, Vec2>& an_positions) {
  sample();
  const bool degenerate = update_weights(bundle, an_positions);
  resample();
  return {estimate(), degenerate};
}

}  // namespace pfml
