#ifndef PFML_PARTICLE_FILTER_HPP_
#define PFML_PARTICLE_FILTER_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pfml/grid_graph.hpp"
#include "pfml/landmark.hpp"
#include "pfml/rng.hpp"

namespace pfml {

struct Particle {
  uint32_t node = 0;
  double weight = 0.0;
};

// One time step's fused observation: estimated ranges (known-position
// anchors only) with their likelihood widths, and the room posterior from
// the landmark detector.
struct ObservationBundle {
  std::map<std::string, double> ranges_m;
  std::map<std::string, double> sigma_m;
  RoomPosterior room_posterior;
};

struct FilterConfig {
  int particles = 2500;
  double n_prime_pct = 10.0;  // share of lowest-weight particles re-seeded uniformly
  double sigma_base_m = 1.0;
  double sigma_per_m = 0.25;
  uint64_t seed = 42;
};

struct StepResult {
  Vec2 estimate;
  bool degenerate = false;  // weights collapsed and were reset to uniform
};

// Exponential likelihood weights m_j, inversely proportional to range and
// normalized to sum 1. Order matches the input order.
std::vector<double> exponential_range_weights(const std::vector<double>& ranges_m);

// In-place renormalization; returns false (leaving weights untouched) when
// the total mass is zero.
bool normalize_weights(std::vector<Particle>& particles);

// Low-variance resampling: n_out offspring drawn over the cumulative weight
// ladder at positions (offset01 + m) / n_out, offspring weights 1/n_out.
// Requires normalized input weights and offset01 in [0, 1).
std::vector<Particle> systematic_resample(const std::vector<Particle>& particles, size_t n_out,
                                          double offset01);

Vec2 weighted_centroid(const std::vector<Particle>& particles, const FloorPlanGraph& graph);

// Monte Carlo position tracker over the floor-plan graph. One instance per
// tracking session; the draw order from the single seeded stream is:
// re-seed targets, then per-particle motion, then the resampling offset.
class ParticleFilter {
 public:
  ParticleFilter(const FloorPlanGraph& graph, const FilterConfig& config);

  // Moves every particle: the lowest-weight n_prime% to uniformly random
  // nodes, the rest to a uniform choice over {current node} + neighbors.
  void sample();

  // Multiplies weights by the ranging and room-landmark likelihoods, then
  // normalizes. Returns true if the mass collapsed and was reset to uniform.
  bool update_weights(const ObservationBundle& bundle,
                      const std::map<std::string, Vec2>& an_positions);

  // Systematic resampling with a single uniform offset; weights reset to 1/N.
  void resample();

  // Weighted centroid of the particle cloud.
  Vec2 estimate() const;

  StepResult step(const ObservationBundle& bundle,
                  const std::map<std::string, Vec2>& an_positions);

  const std::vector<Particle>& particles() const { return particles_; }
  const FilterConfig& config() const { return config_; }

 private:
  const FloorPlanGraph* graph_;
  FilterConfig config_;
  std::vector<Particle> particles_;
  Rng rng_;
};

}  // namespace pfml

#endif
