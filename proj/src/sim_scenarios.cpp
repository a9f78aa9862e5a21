#include "pfml/sim_scenarios.hpp"

#include <cmath>

namespace pfml {

PathLossParams fit_params_to_ldpl(double gamma, double p_r0) {
  std::vector<std::pair<double, double>> curve;
  for (int i = 0; i <= 48; ++i) {
    const double r = 1.0 + 0.5 * i;
    curve.emplace_back(r, p_r0 - 10.0 * gamma * std::log10(r));
  }
  const NlrFit fit = fit_nlr(curve);
  PathLossParams params;
  params.alpha = fit.alpha;
  params.beta = fit.beta;
  params.gamma = gamma;
  params.p_r0 = p_r0;
  return params;
}

namespace {

Polygon rect(double x0, double y0, double x1, double y1) {
  return Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

}  // namespace

EnvironmentModel make_nine_room_environment(const NineRoomOptions& options) {
  EnvironmentModel env;
  FloorPlan& plan = env.plan;
  plan.width_m = 18.0;
  plan.height_m = 16.0;
  plan.grid_spacing_m = options.grid_spacing_m;

  const double wall = 0.3;
  const double corridor_lo = 7.0, corridor_hi = 9.0;
  const double room_width = (plan.width_m - 3.0 * wall) / 4.0;  // 4.275

  // Four rooms below and four above the corridor, 0.3 m walls between.
  std::vector<double> x0s;
  for (int i = 0; i < 4; ++i) x0s.push_back(i * (room_width + wall));
  for (int i = 0; i < 4; ++i) {
    plan.rooms.push_back(
        {"r" + std::to_string(i + 1), rect(x0s[i], 0.0, x0s[i] + room_width, corridor_lo - wall)});
  }
  for (int i = 0; i < 4; ++i) {
    plan.rooms.push_back({"r" + std::to_string(i + 5),
                          rect(x0s[i], corridor_hi + wall, x0s[i] + room_width, plan.height_m)});
  }
  plan.rooms.push_back({"corridor", rect(0.0, corridor_lo, plan.width_m, corridor_hi)});

  // Door stubs bridge each room to the corridor across the wall.
  for (int i = 0; i < 4; ++i) {
    const double cx = x0s[i] + room_width / 2.0;
    plan.corridors.push_back(
        {"door_b" + std::to_string(i + 1), rect(cx - 0.5, corridor_lo - wall, cx + 0.5, corridor_lo)});
    plan.corridors.push_back(
        {"door_t" + std::to_string(i + 1), rect(cx - 0.5, corridor_hi, cx + 0.5, corridor_hi + wall)});
  }

  struct AnchorSite {
    const char* id;
    Vec2 pos;
    double p_r0;
    bool known;
  };
  const AnchorSite sites[] = {
      {"AN1", {0.25, 0.25}, -30.0, true},  {"AN2", {17.75, 0.25}, -32.0, true},
      {"AN3", {0.25, 15.75}, -30.0, true}, {"AN4", {17.75, 15.75}, -31.0, true},
      {"AN5", {9.0, 0.25}, -30.0, true},   {"AN6", {9.0, 15.75}, -30.0, true},
      {"AN7", {4.0, 12.0}, -30.0, false},  {"AN8", {14.0, 4.0}, -31.0, false},
  };
  for (const AnchorSite& site : sites) {
    Anchor anchor;
    anchor.id = site.id;
    if (site.known) anchor.position = site.pos;
    plan.anchors.push_back(anchor);
    env.true_anchor_positions[site.id] = site.pos;
    env.truth_ranging.per_anchor[site.id] = fit_params_to_ldpl(2.7, site.p_r0);
  }

  env.shadowing_sigma_db = options.shadowing_sigma_db;
  env.mf_noise_sigma_ut = options.mf_noise_sigma_ut;
  int k = 0;
  for (const auto& room : plan.rooms) {
    MfRoomField field;
    field.base_v_ut = 28.0 + 3.0 * k;
    field.base_h_ut = 46.0 - 2.5 * k;
    field.amp_ut = 1.5;
    field.phase_rad = 0.7 * k;
    env.mf_rooms[room.id] = field;
    ++k;
  }
  return env;
}

EnvironmentModel make_two_room_ambiguous_environment(const TwoRoomOptions& options) {
  EnvironmentModel env;
  FloorPlan& plan = env.plan;
  plan.width_m = 10.0;
  plan.height_m = 4.0;
  plan.grid_spacing_m = 0.25;

  plan.rooms.push_back({"left", rect(0.0, 0.0, 4.0, 4.0)});
  plan.rooms.push_back({"right", rect(6.0, 0.0, 10.0, 4.0)});

  // Anchors on the x = 5 mirror axis: mirrored positions hear identical
  // expected power from every anchor.
  const Vec2 sites[] = {{5.0, 0.5}, {5.0, 2.0}, {5.0, 3.5}};
  int i = 1;
  for (const Vec2& pos : sites) {
    const std::string id = "AN" + std::to_string(i++);
    plan.anchors.push_back({id, pos});
    env.true_anchor_positions[id] = pos;
    env.truth_ranging.per_anchor[id] = fit_params_to_ldpl(2.7, -30.0);
  }

  env.shadowing_sigma_db = options.shadowing_sigma_db;
  env.mf_noise_sigma_ut = options.mf_noise_sigma_ut;
  MfRoomField left_field{34.0, 30.0, 1.0, 0.0};
  MfRoomField right_field{34.0 + options.mf_base_separation_ut,
                          30.0 - options.mf_base_separation_ut, 1.0, 1.3};
  env.mf_rooms["left"] = left_field;
  env.mf_rooms["right"] = right_field;
  return env;
}

EnvironmentModel make_open_hall_environment(double width_m, double height_m,
                                            double grid_spacing_m) {
  EnvironmentModel env;
  env.plan.width_m = width_m;
  env.plan.height_m = height_m;
  env.plan.grid_spacing_m = grid_spacing_m;
  env.plan.rooms.push_back({"hall", rect(0.0, 0.0, width_m, height_m)});
  env.mf_rooms["hall"] = MfRoomField{40.0, 25.0, 1.0, 0.0};
  return env;
}

}  // namespace pfml
