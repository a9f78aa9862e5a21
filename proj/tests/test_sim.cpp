#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "pfml/grid_graph.hpp"
#include "pfml/sim.hpp"
#include "pfml/sim_scenarios.hpp"

using namespace pfml;

namespace {

EnvironmentModel small_env(double shadowing_db, double mf_noise_ut) {
  EnvironmentModel env = make_open_hall_environment(8.0, 8.0);
  env.shadowing_sigma_db = shadowing_db;
  env.mf_noise_sigma_ut = mf_noise_ut;
  for (int i = 0; i < 3; ++i) {
    const std::string id = "AN" + std::to_string(i + 1);
    const Vec2 pos{i * 4.0, (i % 2) * 8.0};
    env.plan.anchors.push_back({id, pos});
    env.true_anchor_positions[id] = pos;
    env.truth_ranging.per_anchor[id] = fit_params_to_ldpl(2.7, -30.0);
  }
  return env;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("forward power matches the log-distance curve") {
  EnvironmentModel env = small_env(0.0, 0.0);
  env.true_anchor_positions["AN1"] = {0.0, 0.0};
  CHECK(forward_rssi_noiseless(env, "AN1", {1.0, 0.0}) == doctest::Approx(-30.0));
  CHECK(forward_rssi_noiseless(env, "AN1", {10.0, 0.0}) == doctest::Approx(-57.0).epsilon(1e-12));
  CHECK_THROWS_AS(forward_rssi_noiseless(env, "ghost", {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("shadowing noise is zero-mean") {
  EnvironmentModel env = small_env(3.0, 0.0);
  Rng rng(6);
  const Vec2 pos{5.0, 5.0};
  const double noiseless = forward_rssi_noiseless(env, "AN1", pos);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += forward_rssi(env, "AN1", pos, rng);
  CHECK(sum / n == doctest::Approx(noiseless).epsilon(0.002));
  CHECK(std::abs(sum / n - noiseless) < 0.05);
}

TEST_CASE("audibility threshold follows the forward formula") {
  // 27 * log10(200) = 62.13: an anchor 200 m out is still above a -95 dBm
  // floor; the cut happens near 255.5 m.
  EnvironmentModel env = make_open_hall_environment(400.0, 8.0);
  env.plan.anchors.push_back({"far", Vec2{0.0, 0.0}});
  env.true_anchor_positions["far"] = {0.0, 0.0};
  env.truth_ranging.per_anchor["far"] = fit_params_to_ldpl(2.7, -30.0);

  CHECK(forward_rssi_noiseless(env, "far", {200.0, 0.0}) ==
        doctest::Approx(-92.1278098829275).epsilon(1e-9));
  CHECK(forward_rssi_noiseless(env, "far", {300.0, 0.0}) ==
        doctest::Approx(-96.88227387743089).epsilon(1e-9));

  GroundTruthTrace near_point = gen_trace(env.plan, {{200.0, 0.25}}, 1.0, 3.0, 1.0);
  GroundTruthTrace far_point = gen_trace(env.plan, {{300.0, 0.25}}, 1.0, 3.0, 1.0);
  const auto near_frames = gen_observations(env, near_point, 1);
  const auto far_frames = gen_observations(env, far_point, 1);
  CHECK(near_frames[0].rssi_dbm.count("far") == 1);
  CHECK(far_frames[0].rssi_dbm.count("far") == 0);
}

TEST_CASE("noiseless closed loop: hybrid ranging inverts the forward model") {
  const PathLossParams truth = fit_params_to_ldpl(2.7, -30.0);
  Rng rng(10);
  for (int i = 0; i < 1000; ++i) {
    const double r = rng.uniform(0.1, 5.0);
    const double p = truth.p_r0 - 10.0 * truth.gamma * std::log10(r);
    CHECK(hybrid_range(p, truth) == doctest::Approx(r).epsilon(1e-9));
  }
}

TEST_CASE("magnetic field: base value, spatial ripple, and noise scale") {
  EnvironmentModel env = make_open_hall_environment(8.0, 8.0);
  env.mf_rooms["hall"] = MfRoomField{40.0, 25.0, 0.0, 0.0};
  const MagneticSignature base = forward_mf(env, {2.0, 2.0});
  CHECK(base.mf_v == doctest::Approx(40.0));
  CHECK(base.mf_h == doctest::Approx(25.0));

  env.mf_rooms["hall"].amp_ut = 2.0;
  const MagneticSignature a = forward_mf(env, {2.0, 2.0});
  const MagneticSignature b = forward_mf(env, {4.5, 2.0});
  CHECK(a.mf_v != b.mf_v);  // ripple varies with location
  CHECK(std::abs(a.mf_v - 40.0) <= 2.0 + 1e-12);
  CHECK(std::abs(b.mf_v - 40.0) <= 2.0 + 1e-12);

  CHECK_THROWS_AS(forward_mf(env, {100.0, 100.0}), std::invalid_argument);

  env.mf_rooms["hall"].amp_ut = 0.0;
  env.mf_noise_sigma_ut = 0.5;
  Rng rng(12);
  double sum = 0.0, sum2 = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double v = forward_mf_noisy(env, {2.0, 2.0}, rng).mf_v;
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sum2 / n - mean * mean);
  CHECK(sd == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("trace generation: stationary, paced, and validated") {
  const FloorPlan plan = make_open_hall_environment(10.0, 10.0).plan;

  const GroundTruthTrace still = gen_trace(plan, {{2.0, 2.0}}, 1.0, 3.0, 10.0);
  REQUIRE(still.size() == 30);
  for (const TracePoint& tp : still) {
    CHECK(tp.position.x == 2.0);
    CHECK(tp.position.y == 2.0);
    CHECK(tp.room == "hall");
  }

  const GroundTruthTrace walk = gen_trace(plan, {{1.0, 1.0}, {4.0, 1.0}}, 1.0, 1.0);
  REQUIRE(walk.size() == 4);
  for (size_t k = 0; k < walk.size(); ++k) {
    CHECK(walk[k].t == doctest::Approx(static_cast<double>(k)));
    CHECK(walk[k].position.x == doctest::Approx(1.0 + static_cast<double>(k)));
    CHECK(walk[k].position.y == doctest::Approx(1.0));
  }
  // Consecutive speed never exceeds the commanded speed.
  for (size_t k = 1; k < walk.size(); ++k) {
    const double v = distance(walk[k].position, walk[k - 1].position) /
                     (walk[k].t - walk[k - 1].t);
    CHECK(v <= 1.0 + 1e-9);
  }

  CHECK_THROWS_AS(gen_trace(plan, {{50.0, 50.0}}, 1.0, 3.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gen_trace(plan, {}, 1.0, 3.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gen_trace(plan, {{1.0, 1.0}}, 0.0, 3.0, 1.0), std::invalid_argument);
}

TEST_CASE("observations decompose back to the field under random yaw") {
  EnvironmentModel env = small_env(0.0, 0.0);
  env.mf_rooms["hall"] = MfRoomField{40.0, 25.0, 1.5, 0.4};
  const GroundTruthTrace trace = gen_trace(env.plan, {{1.0, 1.0}, {6.0, 6.0}}, 1.0, 3.0);
  const auto frames = gen_observations(env, trace, 5);
  REQUIRE(frames.size() == trace.size());
  for (size_t i = 0; i < frames.size(); ++i) {
    const MagneticSignature expected = forward_mf(env, trace[i].position);
    const MagneticSignature got = decompose_mf(frames[i].mf_ut, frames[i].gravity_mps2);
    CHECK(got.mf_v == doctest::Approx(expected.mf_v).epsilon(1e-9));
    CHECK(got.mf_h == doctest::Approx(expected.mf_h).epsilon(1e-9));
    CHECK(frames[i].gravity_mps2.norm() > 0.0);
    for (const auto& [id, p] : frames[i].rssi_dbm) {
      CHECK(p >= kMinRssiDbm);
      CHECK(p <= kMaxRssiDbm);
    }
  }
}

TEST_CASE("observation generation is deterministic per seed") {
  EnvironmentModel env = small_env(3.0, 0.5);
  const GroundTruthTrace trace = gen_trace(env.plan, {{1.0, 1.0}, {6.0, 2.0}}, 1.0, 3.0);
  const auto a = gen_observations(env, trace, 42);
  const auto b = gen_observations(env, trace, 42);
  const auto c = gen_observations(env, trace, 43);
  REQUIRE(a.size() == b.size());
  bool any_diff = false;
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].rssi_dbm == b[i].rssi_dbm);
    CHECK(a[i].mf_ut.x == b[i].mf_ut.x);
    if (a[i].mf_ut.x != c[i].mf_ut.x) any_diff = true;
  }
  CHECK(any_diff);

  const auto dir = std::filesystem::temp_directory_path();
  save_observations_csv(a, env.plan.anchor_ids(), (dir / "pfml_obs_a.csv").string());
  save_observations_csv(b, env.plan.anchor_ids(), (dir / "pfml_obs_b.csv").string());
  CHECK(read_file(dir / "pfml_obs_a.csv") == read_file(dir / "pfml_obs_b.csv"));

  const auto loaded = load_observations_csv((dir / "pfml_obs_a.csv").string());
  REQUIRE(loaded.size() == a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(loaded[i].rssi_dbm == a[i].rssi_dbm);
    CHECK(loaded[i].mf_ut.z == a[i].mf_ut.z);
    CHECK(loaded[i].gravity_mps2.z == a[i].gravity_mps2.z);
  }
  std::filesystem::remove(dir / "pfml_obs_a.csv");
  std::filesystem::remove(dir / "pfml_obs_b.csv");
}

TEST_CASE("trace CSV round trip") {
  const FloorPlan plan = make_open_hall_environment(10.0, 10.0).plan;
  const GroundTruthTrace trace = gen_trace(plan, {{1.0, 1.0}, {4.0, 5.0}}, 1.3, 3.0);
  const auto path = std::filesystem::temp_directory_path() / "pfml_trace.csv";
  save_trace_csv(trace, path.string());
  const GroundTruthTrace loaded = load_trace_csv(path.string());
  REQUIRE(loaded.size() == trace.size());
  for (size_t i = 0; i < trace.size(); ++i) {
    CHECK(loaded[i].t == trace[i].t);
    CHECK(loaded[i].position.x == trace[i].position.x);
    CHECK(loaded[i].room == trace[i].room);
  }
  std::filesystem::remove(path);
}

TEST_CASE("survey database covers every room with the requested counts") {
  EnvironmentModel env = make_two_room_ambiguous_environment();
  SurveySpec spec;
  spec.instances_per_room = 25;
  const FingerprintDatabase db = build_survey_db(env, spec, 3);
  CHECK(db.size() == 50);
  CHECK(db.ap_list == env.plan.anchor_ids());
  std::map<std::string, int> counts;
  for (const auto& label : db.labels) counts[label]++;
  CHECK(counts["left"] == 25);
  CHECK(counts["right"] == 25);

  // Distinct seeds change the instances, not the class marginals.
  const FingerprintDatabase other = build_survey_db(env, spec, 4);
  std::map<std::string, int> other_counts;
  for (const auto& label : other.labels) other_counts[label]++;
  CHECK(other_counts == counts);
  CHECK(db.features != other.features);

  SurveySpec partial;
  partial.instances_per_room = 5;
  partial.rooms = {"left"};
  CHECK_THROWS_WITH_AS(build_survey_db(env, partial, 3),
                       doctest::Contains("right"), std::invalid_argument);

  SurveySpec single;
  single.instances_per_room = 5;
  EnvironmentModel hall = small_env(0.0, 0.0);
  const FingerprintDatabase one = build_survey_db(hall, single, 9);
  CHECK(one.class_labels() == std::vector<std::string>{"hall"});
}

TEST_CASE("coordinate survey grid lands on walkable intersections") {
  EnvironmentModel env = small_env(0.0, 0.0);
  const CoordFingerprintDatabase db = build_coord_survey_db(env, 1.0, 4, 8);
  CHECK(db.size() == 81 * 4);  // 9x9 one-meter grid, 4 samples each
  for (const Vec2& c : db.coords) {
    CHECK(std::fmod(c.x, 1.0) == doctest::Approx(0.0));
    CHECK(env.plan.is_walkable(c));
  }
  CHECK_THROWS_AS(build_coord_survey_db(env, 0.0, 4, 8), std::invalid_argument);
}

TEST_CASE("environment JSON round trip preserves the model") {
  const EnvironmentModel env = make_nine_room_environment();
  const auto path = std::filesystem::temp_directory_path() / "pfml_env.json";
  save_environment(env, path.string());
  const EnvironmentModel loaded = load_environment(path.string());

  CHECK(loaded.plan.width_m == env.plan.width_m);
  CHECK(loaded.plan.rooms.size() == env.plan.rooms.size());
  CHECK(loaded.plan.corridors.size() == env.plan.corridors.size());
  CHECK(loaded.shadowing_sigma_db == env.shadowing_sigma_db);
  CHECK(loaded.mf_noise_sigma_ut == env.mf_noise_sigma_ut);
  CHECK(loaded.true_anchor_positions == env.true_anchor_positions);
  CHECK(loaded.truth_ranging.per_anchor.size() == env.truth_ranging.per_anchor.size());
  for (const auto& [id, p] : env.truth_ranging.per_anchor) {
    CHECK(loaded.truth_ranging.at(id).alpha == doctest::Approx(p.alpha).epsilon(1e-12));
    CHECK(loaded.truth_ranging.at(id).beta == doctest::Approx(p.beta).epsilon(1e-12));
  }
  // Unknown-position anchors stay hidden from the localizer.
  CHECK(env.plan.known_anchor_positions().count("AN7") == 0);
  CHECK(loaded.plan.known_anchor_positions().count("AN7") == 0);
  CHECK(loaded.true_anchor_positions.count("AN7") == 1);
  std::filesystem::remove(path);
}

TEST_CASE("nine-room scenario is well formed") {
  const EnvironmentModel env = make_nine_room_environment();
  env.plan.validate();
  CHECK(env.plan.rooms.size() == 9);
  CHECK(env.plan.anchors.size() == 8);
  CHECK(env.plan.known_anchor_positions().size() == 6);

  const FloorPlanGraph g = FloorPlanGraph::build(env.plan, env.plan.grid_spacing_m);
  CHECK(g.node_count() > 3000);

  // The door stubs connect every room to the corridor: breadth-first from
  // node 0 must reach the whole graph.
  std::vector<char> seen(g.node_count(), 0);
  std::vector<uint32_t> queue{0};
  seen[0] = 1;
  size_t reached = 1;
  while (!queue.empty()) {
    const uint32_t u = queue.back();
    queue.pop_back();
    for (const uint32_t v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        queue.push_back(v);
      }
    }
  }
  CHECK(reached == g.node_count());
}

TEST_CASE("mirror-room scenario is Wi-Fi ambiguous by construction") {
  const EnvironmentModel env = make_two_room_ambiguous_environment();
  const Vec2 left{1.5, 2.5};
  const Vec2 right{10.0 - 1.5, 2.5};
  for (const auto& [id, pos] : env.true_anchor_positions) {
    (void)pos;
    CHECK(forward_rssi_noiseless(env, id, left) ==
          doctest::Approx(forward_rssi_noiseless(env, id, right)).epsilon(1e-12));
  }
  const double v_gap = std::abs(env.mf_rooms.at("left").base_v_ut -
                                env.mf_rooms.at("right").base_v_ut);
  CHECK(v_gap >= 10.0);
}
