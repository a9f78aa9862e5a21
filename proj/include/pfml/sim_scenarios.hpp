#ifndef PFML_SIM_SCENARIOS_HPP_
#define PFML_SIM_SCENARIOS_HPP_

#include "pfml/sim.hpp"

namespace pfml {

struct NineRoomOptions {
  double shadowing_sigma_db = 3.0;
  double mf_noise_sigma_ut = 0.5;
  double grid_spacing_m = 0.25;
};

// Office-like 18 m x 16 m floor: eight rooms around a full-width central
// corridor (nine labeled areas), door openings modeled as short walkable
// stubs, six known-position ranging anchors on the boundary plus two
// landmark-only anchors at unsurveyed spots. Per-anchor regression
// parameters are fit against the log-distance truth curve so the hybrid
// ranging model is self-consistent.
EnvironmentModel make_nine_room_environment(const NineRoomOptions& options = {});

struct TwoRoomOptions {
  double shadowing_sigma_db = 2.0;
  double mf_noise_sigma_ut = 0.5;
  double mf_base_separation_ut = 12.0;
};

// Two mirror-image rooms with every anchor on the symmetry axis: expected
// RSSI vectors are identical across rooms, so only the magnetic field
// separates them.
EnvironmentModel make_two_room_ambiguous_environment(const TwoRoomOptions& options = {});

// Single fully-walkable rectangle, for lattice and benchmark setups.
EnvironmentModel make_open_hall_environment(double width_m, double height_m,
                                            double grid_spacing_m = 0.25);

// Regression parameters matched to the anchor's log-distance curve over
// r in [1, 25] m.
PathLossParams fit_params_to_ldpl(double gamma, double p_r0);

}  // namespace pfml

#endif
