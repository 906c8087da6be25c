#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sagin/rng.hpp"
#include "sagin/units.hpp"

namespace sagin {

inline constexpr std::string_view kScenarioSchema = "sagin-sfc-sim/v1";

class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& field, const std::string& what)
      : std::runtime_error("field '" + field + "': " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Policy { frmg, flts, rssp, rsnt };

inline std::string_view policy_name(Policy p) {
  switch (p) {
    case Policy::frmg: return "FRMG";
    case Policy::flts: return "FLTS";
    case Policy::rssp: return "RSSP";
    case Policy::rsnt: return "RSNT";
  }
  return "?";
}

inline Policy parse_policy(std::string_view name) {
  for (Policy p : {Policy::frmg, Policy::flts, Policy::rssp, Policy::rsnt})
    if (policy_name(p) == name) return p;
  throw SchemaError("policy", "unknown policy '" + std::string(name) + "'");
}

struct TimeGrid {
  int slot_count = 60;
  double slot_length_s = 5.0;
  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

// Physical constants of the channel/energy models. Values are stored in the
// units they are usually quoted in (W, Hz, dB, dBm); `derived` caches the
// linear forms and is refreshed by finalize().
struct ParameterSet {
  // Table III
  double ground_tx_power_w = 0.5;     // P^tr_g
  double uav_tx_power_w = 10.0;       // P^tr_u
  double uav_altitude_m = 100.0;      // h_u
  double uu_tx_power_w = 10.0;        // P_uu
  double uu_carrier_hz = 2.4e9;       // f_uu
  double uu_noise_w = 4e-13;          // sigma_uu^2
  double sg_tx_power_w = 20.0;        // P_sg
  double sg_gain_db = 42.0;           // G^tr_sg G^re_sg
  double us_center_hz = 3.4e9;        // f^cen_us
  double us_tx_power_w = 10.0;        // P_us
  double ss_tx_power_w = 20.0;        // P_ss
  double us_gain_db = 42.0;           // G^tr_us G^re_us
  double ss_gain_db = 52.0;           // G^tr_ss G^re_ss
  double system_noise_temp_k = 1000.0;
  double line_loss_db = 2.0;
  double noise_density_dbm = -114.0;  // N0, dBm per MHz
  double gu_bandwidth_hz = 2e6;       // also used for U2G
  double uu_bandwidth_hz = 4e6;
  double us_bandwidth_hz = 50e6;
  double ss_bandwidth_hz = 80e6;
  double sg_bandwidth_hz = 80e6;
  double ss_center_hz = 2.2e9;
  double sg_center_hz = 20e9;
  double uav_speed_mps = 12.0;        // s
  double uav_max_speed_mps = 12.0;    // s_max
  double uav_max_power_w = 5.0;       // P_max
  double rotor_radius_m = 0.2;        // iota
  double rotor_count = 4.0;           // kappa

  // Not given in Table III.
  double reference_gain = 1e-4;       // G0 at 1 m
  double ground_noise_w = 1e-13;      // sigma_0^2
  double uav_mass_kg = 2.0;
  double air_density = 1.225;
  double gravity = 9.8;
  double slant_path_length = 1.0;     // L_e
  double rain_attenuation_db = 0.1;   // folded into alpha
  double us_rx_power_w = 1.0;         // P^re_us
  double ss_rx_power_w = 1.0;         // P^re_ss
  double required_ebn0_db = 10.0;
  double max_slant_range_m = 2e6;     // S_m
  double boltzmann = 1.380649e-23;
  double uav_operation_power_w = 2.0;
  double sat_operation_power_w = 10.0;
  double compute_energy_j_per_unit = 50.0;  // e^c
  double compute_capacity_units = 3.0;      // C
  double storage_capacity_bits = 1.6e9;     // A
  double energy_capacity_j = 1e5;           // E^M
  double compute_ability_units_per_s = 0.2; // phi (one unit per 5 s slot)
  double sigma_min_units = 0.5;
  double sigma_max_units = 2.0;

  struct Derived {
    double sg_gain = 0, us_gain = 0, ss_gain = 0;
    double line_loss = 0;         // linear factor <= 1
    double noise_density_w_per_hz = 0;
    double required_ebn0 = 0;
    double rain_factor = 0;       // alpha, linear <= 1
    friend bool operator==(const Derived&, const Derived&) = default;
  } derived;

  void finalize() {
    derived.sg_gain = db_to_linear(sg_gain_db);
    derived.us_gain = db_to_linear(us_gain_db);
    derived.ss_gain = db_to_linear(ss_gain_db);
    derived.line_loss = db_to_linear(-line_loss_db);
    derived.noise_density_w_per_hz = dbm_to_watts(noise_density_dbm) / 1e6;
    derived.required_ebn0 = db_to_linear(required_ebn0_db);
    derived.rain_factor = db_to_linear(-rain_attenuation_db);
  }

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
};

struct ParameterField {
  const char* name;
  double ParameterSet::*member;
  bool allow_zero;
};

inline const std::vector<ParameterField>& parameter_fields() {
  using P = ParameterSet;
  static const std::vector<ParameterField> fields = {
      {"ground_tx_power_w", &P::ground_tx_power_w, false},
      {"uav_tx_power_w", &P::uav_tx_power_w, false},
      {"uav_altitude_m", &P::uav_altitude_m, false},
      {"uu_tx_power_w", &P::uu_tx_power_w, false},
      {"uu_carrier_hz", &P::uu_carrier_hz, false},
      {"uu_noise_w", &P::uu_noise_w, false},
      {"sg_tx_power_w", &P::sg_tx_power_w, false},
      {"sg_gain_db", &P::sg_gain_db, true},
      {"us_center_hz", &P::us_center_hz, false},
      {"us_tx_power_w", &P::us_tx_power_w, false},
      {"ss_tx_power_w", &P::ss_tx_power_w, false},
      {"us_gain_db", &P::us_gain_db, true},
      {"ss_gain_db", &P::ss_gain_db, true},
      {"system_noise_temp_k", &P::system_noise_temp_k, false},
      {"line_loss_db", &P::line_loss_db, true},
      {"noise_density_dbm", &P::noise_density_dbm, true},
      {"gu_bandwidth_hz", &P::gu_bandwidth_hz, false},
      {"uu_bandwidth_hz", &P::uu_bandwidth_hz, false},
      {"us_bandwidth_hz", &P::us_bandwidth_hz, false},
      {"ss_bandwidth_hz", &P::ss_bandwidth_hz, false},
      {"sg_bandwidth_hz", &P::sg_bandwidth_hz, false},
      {"ss_center_hz", &P::ss_center_hz, false},
      {"sg_center_hz", &P::sg_center_hz, false},
      {"uav_speed_mps", &P::uav_speed_mps, true},
      {"uav_max_speed_mps", &P::uav_max_speed_mps, false},
      {"uav_max_power_w", &P::uav_max_power_w, false},
      {"rotor_radius_m", &P::rotor_radius_m, false},
      {"rotor_count", &P::rotor_count, false},
      {"reference_gain", &P::reference_gain, false},
      {"ground_noise_w", &P::ground_noise_w, false},
      {"uav_mass_kg", &P::uav_mass_kg, false},
      {"air_density", &P::air_density, false},
      {"gravity", &P::gravity, false},
      {"slant_path_length", &P::slant_path_length, false},
      {"rain_attenuation_db", &P::rain_attenuation_db, true},
      {"us_rx_power_w", &P::us_rx_power_w, false},
      {"ss_rx_power_w", &P::ss_rx_power_w, false},
      {"required_ebn0_db", &P::required_ebn0_db, true},
      {"max_slant_range_m", &P::max_slant_range_m, false},
      {"boltzmann", &P::boltzmann, false},
      {"uav_operation_power_w", &P::uav_operation_power_w, true},
      {"sat_operation_power_w", &P::sat_operation_power_w, true},
      {"compute_energy_j_per_unit", &P::compute_energy_j_per_unit, false},
      {"compute_capacity_units", &P::compute_capacity_units, false},
      {"storage_capacity_bits", &P::storage_capacity_bits, false},
      {"energy_capacity_j", &P::energy_capacity_j, false},
      {"compute_ability_units_per_s", &P::compute_ability_units_per_s, false},
      {"sigma_min_units", &P::sigma_min_units, false},
      {"sigma_max_units", &P::sigma_max_units, false},
  };
  return fields;
}

inline ParameterSet default_parameters() {
  ParameterSet p;
  p.finalize();
  return p;
}

// Circular track in a vertical plane through the Earth's centre, which sits
// kEarthRadius below the middle of the ground square. phase = pi/2 puts the
// satellite at the zenith; inclination_deg rotates the track plane about the
// vertical axis.
struct OrbitSpec {
  double altitude_m = 550e3;
  double inclination_deg = 0.0;
  double phase_rad = std::numbers::pi / 2;
  friend bool operator==(const OrbitSpec&, const OrbitSpec&) = default;
};

struct Point2 {
  double x = 0, y = 0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Geometry {
  double area_side_m = 2000.0;
  int uav_count = 30;
  double min_uav_separation_m = 20.0;
  double uav_comm_range_m = 500.0;
  double ground_access_radius_m = 800.0;
  std::vector<OrbitSpec> satellites{{550e3, 0.0, std::numbers::pi / 2 - 0.02},
                                    {550e3, 60.0, std::numbers::pi / 2 + 0.02}};
  std::vector<Point2> ground_stations{{250, 250}, {1750, 250}, {250, 1750}, {1750, 1750}};
  std::optional<std::vector<Point2>> uav_initial_positions;
  friend bool operator==(const Geometry&, const Geometry&) = default;
};

struct SfcSpec {
  int id = 0;
  double data_bits = 0;
  int origin = 0;       // ground-station index
  int destination = 0;  // ground-station index
  std::vector<double> sigma;  // per-VNF compute demand
  int vnf_count() const { return static_cast<int>(sigma.size()); }
  friend bool operator==(const SfcSpec&, const SfcSpec&) = default;
};

struct SfcGenerator {
  int count = 10;
  double data_min_bits = 200e6;
  double data_max_bits = 800e6;
  int vnf_min = 2;
  int vnf_max = 3;
  friend bool operator==(const SfcGenerator&, const SfcGenerator&) = default;
};

struct FailureConfig {
  double lambda = 2.0;
  int update_interval_slots = 3;
  bool uav_eligible = true;
  bool satellite_eligible = true;
  friend bool operator==(const FailureConfig&, const FailureConfig&) = default;
};

struct PreferenceWeights {
  double a = 100.0, b = 10.0, c = 1.0;
  friend bool operator==(const PreferenceWeights&, const PreferenceWeights&) = default;
};

struct Scenario {
  TimeGrid time;
  ParameterSet params = default_parameters();
  Geometry geometry;
  SfcGenerator generator;
  bool sfcs_explicit = false;
  std::vector<SfcSpec> sfcs;
  FailureConfig failure;
  PreferenceWeights weights;
  std::uint64_t seed = 1;
  Policy policy = Policy::frmg;

  int total_vnf_count() const {
    int n = 0;
    for (const auto& s : sfcs) n += s.vnf_count();
    return n;
  }
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

inline std::vector<SfcSpec> generate_sfcs(const SfcGenerator& gen, const ParameterSet& params,
                                          int ground_station_count, std::uint64_t seed) {
  Stream s = seeded_stream(seed, "sfcs");
  std::vector<SfcSpec> out;
  for (int k = 0; k < gen.count; ++k) {
    SfcSpec spec;
    spec.id = k;
    spec.data_bits = uniform(s, gen.data_min_bits, gen.data_max_bits);
    spec.origin = uniform_int(s, 0, ground_station_count - 1);
    spec.destination = spec.origin;
    if (ground_station_count > 1) {
      int d = uniform_int(s, 0, ground_station_count - 2);
      spec.destination = d >= spec.origin ? d + 1 : d;
    }
    const int vnfs = uniform_int(s, gen.vnf_min, gen.vnf_max);
    for (int m = 0; m < vnfs; ++m)
      spec.sigma.push_back(uniform(s, params.sigma_min_units, params.sigma_max_units));
    out.push_back(std::move(spec));
  }
  return out;
}

inline void regenerate_sfcs(Scenario& sc) {
  if (sc.sfcs_explicit) return;
  sc.sfcs = generate_sfcs(sc.generator, sc.params,
                          static_cast<int>(sc.geometry.ground_stations.size()), sc.seed);
}

// Throws ValidationError naming the first failing invariant.
inline void validate(const Scenario& sc) {
  auto fail = [](const std::string& what) { throw ValidationError("invariant violated: " + what); };
  if (sc.time.slot_count < 1) fail("time.slot_count >= 1");
  if (!(sc.time.slot_length_s > 0)) fail("time.slot_length_s > 0");
  for (const auto& f : parameter_fields()) {
    const double v = sc.params.*(f.member);
    if (!std::isfinite(v)) fail("params." + std::string(f.name) + " finite");
    if (!f.allow_zero && !(v > 0)) fail("params." + std::string(f.name) + " > 0");
  }
  if (sc.params.uav_speed_mps < 0) fail("params.uav_speed_mps >= 0");
  if (sc.params.uav_speed_mps > sc.params.uav_max_speed_mps)
    fail("params.uav_speed_mps <= params.uav_max_speed_mps");
  if (sc.params.sigma_min_units > sc.params.sigma_max_units)
    fail("params.sigma_min_units <= params.sigma_max_units");
  const auto& g = sc.geometry;
  if (!(g.area_side_m > 0)) fail("geometry.area_side_m > 0");
  if (g.uav_count < 0) fail("geometry.uav_count >= 0");
  if (!(g.min_uav_separation_m < g.uav_comm_range_m))
    fail("geometry.min_uav_separation_m < geometry.uav_comm_range_m");
  if (g.ground_stations.empty()) fail("geometry.ground_stations nonempty");
  for (const auto& o : g.satellites)
    if (!(o.altitude_m > 0)) fail("geometry.satellites[].altitude_m > 0");
  if (g.uav_initial_positions) {
    const auto& p = *g.uav_initial_positions;
    if (static_cast<int>(p.size()) != g.uav_count)
      fail("geometry.uav_initial_positions has uav_count entries");
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i].x < 0 || p[i].x > g.area_side_m || p[i].y < 0 || p[i].y > g.area_side_m)
        fail("UAV initial positions inside the square");
      for (std::size_t j = 0; j < i; ++j)
        if (std::hypot(p[i].x - p[j].x, p[i].y - p[j].y) < g.min_uav_separation_m)
          fail("UAV initial positions pairwise >= min_uav_separation_m");
    }
  }
  const auto& gen = sc.generator;
  if (gen.count < 0) fail("sfc_generator.count >= 0");
  if (!(gen.data_min_bits > 0) || gen.data_min_bits > gen.data_max_bits)
    fail("0 < sfc_generator.data_min_bits <= data_max_bits");
  if (gen.vnf_min < 1 || gen.vnf_min > gen.vnf_max) fail("1 <= sfc_generator.vnf_min <= vnf_max");
  const int gs = static_cast<int>(g.ground_stations.size());
  for (const auto& s : sc.sfcs) {
    if (s.origin < 0 || s.origin >= gs || s.destination < 0 || s.destination >= gs)
      fail("sfc " + std::to_string(s.id) + " origin/destination reference existing ground stations");
    if (!(s.data_bits > 0)) fail("sfc " + std::to_string(s.id) + " data_bits > 0");
    if (s.sigma.empty()) fail("sfc " + std::to_string(s.id) + " vnf_count >= 1");
    for (double v : s.sigma)
      if (!(v > 0)) fail("sfc " + std::to_string(s.id) + " sigma > 0");
  }
  if (sc.failure.lambda < 0) fail("failure.lambda >= 0");
  if (sc.failure.update_interval_slots < 1) fail("failure.update_interval_slots >= 1");
  const auto& w = sc.weights;
  if (!(w.a > w.b && w.b > w.c && w.c > 0)) fail("weights a > b > c > 0");
}

namespace detail {

using nlohmann::json;

template <typename T>
T get_field(const json& obj, const std::string& key, const std::string& path, T fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw SchemaError(path + key, "wrong type");
  }
}

inline void check_keys(const json& obj, const std::string& path,
                       std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw SchemaError(path.empty() ? "<root>" : path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (auto a : allowed) ok = ok || it.key() == a;
    if (!ok) throw SchemaError(path + it.key(), "unknown field");
  }
}

inline std::vector<Point2> get_points(const json& arr, const std::string& path) {
  if (!arr.is_array()) throw SchemaError(path, "expected an array of [x, y]");
  std::vector<Point2> out;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw SchemaError(path, "expected [x, y] pairs");
    out.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return out;
}

inline json points_json(const std::vector<Point2>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back({p.x, p.y});
  return arr;
}

}  // namespace detail

inline Scenario scenario_from_json(const nlohmann::json& doc) {
  using detail::check_keys;
  using detail::get_field;
  using nlohmann::json;
  check_keys(doc, "", {"schema", "seed", "policy", "time", "params", "geometry", "sfcs",
                       "sfc_generator", "failure", "weights"});
  Scenario sc;
  const auto schema = get_field<std::string>(doc, "schema", "", std::string(kScenarioSchema));
  if (schema != kScenarioSchema) throw SchemaError("schema", "expected " + std::string(kScenarioSchema));
  sc.seed = get_field<std::uint64_t>(doc, "seed", "", sc.seed);
  sc.policy = parse_policy(get_field<std::string>(doc, "policy", "", "FRMG"));

  if (auto it = doc.find("time"); it != doc.end()) {
    check_keys(*it, "time.", {"slot_count", "slot_length_s"});
    sc.time.slot_count = get_field(*it, "slot_count", "time.", sc.time.slot_count);
    sc.time.slot_length_s = get_field(*it, "slot_length_s", "time.", sc.time.slot_length_s);
  }
  if (auto it = doc.find("params"); it != doc.end()) {
    if (!it->is_object()) throw SchemaError("params", "expected an object");
    for (auto f = it->begin(); f != it->end(); ++f) {
      bool known = false;
      for (const auto& pf : parameter_fields()) {
        if (f.key() != pf.name) continue;
        if (!f->is_number()) throw SchemaError("params." + f.key(), "expected a number");
        sc.params.*(pf.member) = f->get<double>();
        known = true;
      }
      if (!known) throw SchemaError("params." + f.key(), "unknown field");
    }
  }
  sc.params.finalize();

  if (auto it = doc.find("geometry"); it != doc.end()) {
    auto& g = sc.geometry;
    check_keys(*it, "geometry.", {"area_side_m", "uav_count", "min_uav_separation_m", "uav_comm_range_m",
                                  "ground_access_radius_m", "satellites", "ground_stations",
                                  "uav_initial_positions"});
    g.area_side_m = get_field(*it, "area_side_m", "geometry.", g.area_side_m);
    g.uav_count = get_field(*it, "uav_count", "geometry.", g.uav_count);
    g.min_uav_separation_m = get_field(*it, "min_uav_separation_m", "geometry.", g.min_uav_separation_m);
    g.uav_comm_range_m = get_field(*it, "uav_comm_range_m", "geometry.", g.uav_comm_range_m);
    g.ground_access_radius_m =
        get_field(*it, "ground_access_radius_m", "geometry.", g.ground_access_radius_m);
    if (auto s = it->find("satellites"); s != it->end()) {
      if (!s->is_array()) throw SchemaError("geometry.satellites", "expected an array");
      g.satellites.clear();
      for (const auto& o : *s) {
        check_keys(o, "geometry.satellites[].", {"altitude_m", "inclination_deg", "phase_rad"});
        OrbitSpec orbit;
        orbit.altitude_m = get_field(o, "altitude_m", "geometry.satellites[].", orbit.altitude_m);
        orbit.inclination_deg = get_field(o, "inclination_deg", "geometry.satellites[].", orbit.inclination_deg);
        orbit.phase_rad = get_field(o, "phase_rad", "geometry.satellites[].", orbit.phase_rad);
        g.satellites.push_back(orbit);
      }
    }
    if (auto s = it->find("ground_stations"); s != it->end())
      g.ground_stations = detail::get_points(*s, "geometry.ground_stations");
    if (auto s = it->find("uav_initial_positions"); s != it->end())
      g.uav_initial_positions = detail::get_points(*s, "geometry.uav_initial_positions");
  }
  if (auto it = doc.find("sfc_generator"); it != doc.end()) {
    auto& gen = sc.generator;
    check_keys(*it, "sfc_generator.", {"count", "data_min_bits", "data_max_bits", "vnf_min", "vnf_max"});
    gen.count = get_field(*it, "count", "sfc_generator.", gen.count);
    gen.data_min_bits = get_field(*it, "data_min_bits", "sfc_generator.", gen.data_min_bits);
    gen.data_max_bits = get_field(*it, "data_max_bits", "sfc_generator.", gen.data_max_bits);
    gen.vnf_min = get_field(*it, "vnf_min", "sfc_generator.", gen.vnf_min);
    gen.vnf_max = get_field(*it, "vnf_max", "sfc_generator.", gen.vnf_max);
  }
  if (auto it = doc.find("failure"); it != doc.end()) {
    auto& f = sc.failure;
    check_keys(*it, "failure.", {"lambda", "update_interval_slots", "eligible_layers"});
    f.lambda = get_field(*it, "lambda", "failure.", f.lambda);
    f.update_interval_slots = get_field(*it, "update_interval_slots", "failure.", f.update_interval_slots);
    if (auto l = it->find("eligible_layers"); l != it->end()) {
      if (!l->is_array()) throw SchemaError("failure.eligible_layers", "expected an array");
      f.uav_eligible = f.satellite_eligible = false;
      for (const auto& name : *l) {
        if (name == "uav") f.uav_eligible = true;
        else if (name == "satellite") f.satellite_eligible = true;
        else throw SchemaError("failure.eligible_layers", "expected 'uav' or 'satellite'");
      }
    }
  }
  if (auto it = doc.find("weights"); it != doc.end()) {
    check_keys(*it, "weights.", {"a", "b", "c"});
    sc.weights.a = get_field(*it, "a", "weights.", sc.weights.a);
    sc.weights.b = get_field(*it, "b", "weights.", sc.weights.b);
    sc.weights.c = get_field(*it, "c", "weights.", sc.weights.c);
  }
  if (auto it = doc.find("sfcs"); it != doc.end()) {
    if (!it->is_array()) throw SchemaError("sfcs", "expected an array");
    sc.sfcs_explicit = true;
    int next_id = 0;
    for (const auto& s : *it) {
      check_keys(s, "sfcs[].", {"id", "data_bits", "origin", "destination", "sigma"});
      SfcSpec spec;
      spec.id = get_field(s, "id", "sfcs[].", next_id);
      if (!s.contains("data_bits")) throw SchemaError("sfcs[].data_bits", "required");
      spec.data_bits = get_field(s, "data_bits", "sfcs[].", 0.0);
      spec.origin = get_field(s, "origin", "sfcs[].", 0);
      spec.destination = get_field(s, "destination", "sfcs[].", 0);
      spec.sigma = get_field(s, "sigma", "sfcs[].", std::vector<double>{});
      next_id = spec.id + 1;
      sc.sfcs.push_back(std::move(spec));
    }
  } else {
    regenerate_sfcs(sc);
  }
  validate(sc);
  return sc;
}

inline Scenario load_scenario(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("<document>", std::string("parse error: ") + e.what());
  }
  return scenario_from_json(doc);
}

inline nlohmann::json to_json(const Scenario& sc) {
  using nlohmann::json;
  json doc;
  doc["schema"] = kScenarioSchema;
  doc["seed"] = sc.seed;
  doc["policy"] = policy_name(sc.policy);
  doc["time"] = {{"slot_count", sc.time.slot_count}, {"slot_length_s", sc.time.slot_length_s}};
  json params = json::object();
  for (const auto& f : parameter_fields()) params[f.name] = sc.params.*(f.member);
  doc["params"] = params;
  const auto& g = sc.geometry;
  json sats = json::array();
  for (const auto& o : g.satellites)
    sats.push_back({{"altitude_m", o.altitude_m}, {"inclination_deg", o.inclination_deg}, {"phase_rad", o.phase_rad}});
  doc["geometry"] = {{"area_side_m", g.area_side_m},
                     {"uav_count", g.uav_count},
                     {"min_uav_separation_m", g.min_uav_separation_m},
                     {"uav_comm_range_m", g.uav_comm_range_m},
                     {"ground_access_radius_m", g.ground_access_radius_m},
                     {"satellites", sats},
                     {"ground_stations", detail::points_json(g.ground_stations)}};
  if (g.uav_initial_positions)
    doc["geometry"]["uav_initial_positions"] = detail::points_json(*g.uav_initial_positions);
  const auto& gen = sc.generator;
  doc["sfc_generator"] = {{"count", gen.count},
                          {"data_min_bits", gen.data_min_bits},
                          {"data_max_bits", gen.data_max_bits},
                          {"vnf_min", gen.vnf_min},
                          {"vnf_max", gen.vnf_max}};
  if (sc.sfcs_explicit) {
    json arr = json::array();
    for (const auto& s : sc.sfcs)
      arr.push_back({{"id", s.id}, {"data_bits", s.data_bits}, {"origin", s.origin},
                     {"destination", s.destination}, {"sigma", s.sigma}});
    doc["sfcs"] = arr;
  }
  json layers = json::array();
  if (sc.failure.uav_eligible) layers.push_back("uav");
  if (sc.failure.satellite_eligible) layers.push_back("satellite");
  doc["failure"] = {{"lambda", sc.failure.lambda},
                    {"update_interval_slots", sc.failure.update_interval_slots},
                    {"eligible_layers", layers}};
  doc["weights"] = {{"a", sc.weights.a}, {"b", sc.weights.b}, {"c", sc.weights.c}};
  return doc;
}

inline std::string serialize(const Scenario& sc) { return to_json(sc).dump(2) + "\n"; }

inline Scenario default_scenario(std::uint64_t seed = 1) {
  Scenario sc;
  sc.seed = seed;
  regenerate_sfcs(sc);
  return sc;
}

// Same scenario under a new seed; generated SFCs follow the seed.
inline Scenario with_seed(Scenario sc, std::uint64_t seed) {
  sc.seed = seed;
  regenerate_sfcs(sc);
  return sc;
}

}  // namespace sagin
