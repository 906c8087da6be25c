#pragma once

#include <cmath>
#include <numbers>
#include <string_view>

#include "sagin/scenario.hpp"
#include "sagin/units.hpp"

namespace sagin {

enum class LinkKind { g2u, u2g, u2u, u2s, s2s, s2g, storage };

inline std::string_view link_kind_name(LinkKind k) {
  switch (k) {
    case LinkKind::g2u: return "G2U";
    case LinkKind::u2g: return "U2G";
    case LinkKind::u2u: return "U2U";
    case LinkKind::u2s: return "U2S";
    case LinkKind::s2s: return "S2S";
    case LinkKind::s2g: return "S2G";
    case LinkKind::storage: return "STORAGE";
  }
  return "?";
}

inline LinkKind parse_link_kind(std::string_view name) {
  for (LinkKind k : {LinkKind::g2u, LinkKind::u2g, LinkKind::u2u, LinkKind::u2s, LinkKind::s2s,
                     LinkKind::s2g, LinkKind::storage})
    if (link_kind_name(k) == name) return k;
  throw DomainError("unknown link kind '" + std::string(name) + "'");
}

inline double shannon_rate(double bandwidth_hz, double snr_linear) {
  return bandwidth_hz * std::log2(1.0 + snr_linear);
}

// Line-of-sight ground link. `uplink` selects the ground transmitter (G2U),
// otherwise the UAV transmits (U2G).
inline double snr_ground_link(const ParameterSet& p, Vec3 uav_pos, Vec3 ground_pos, bool uplink) {
  const double dx = uav_pos.x - ground_pos.x;
  const double dy = uav_pos.y - ground_pos.y;
  const double dz = uav_pos.z - ground_pos.z;
  const double d2 = dx * dx + dy * dy + dz * dz;
  if (!(d2 > 0)) throw DomainError("ground link distance must be positive");
  const double tx = uplink ? p.ground_tx_power_w : p.uav_tx_power_w;
  return tx * p.reference_gain / (p.ground_noise_w * d2);
}

inline double snr_g2u(const ParameterSet& p, Vec3 uav_pos, Vec3 ground_pos) {
  return snr_ground_link(p, uav_pos, ground_pos, true);
}

inline double snr_u2g(const ParameterSet& p, Vec3 uav_pos, Vec3 ground_pos) {
  return snr_ground_link(p, uav_pos, ground_pos, false);
}

inline double path_loss_u2u(double distance_m, double f_hz) {
  if (!(distance_m > 0)) throw DomainError("U2U distance must be positive");
  return 20.0 * std::log10(distance_m) + 20.0 * std::log10(4.0 * std::numbers::pi * f_hz / kSpeedOfLight);
}

inline double snr_u2u(const ParameterSet& p, double distance_m) {
  const double loss_db = path_loss_u2u(distance_m, p.uu_carrier_hz);
  return p.uu_tx_power_w / p.uu_noise_w * std::pow(10.0, -loss_db / 10.0);
}

inline double free_space_loss(double slant_m, double f_center_hz) {
  if (!(slant_m > 0)) throw DomainError("slant range must be positive");
  const double r = kSpeedOfLight / (4.0 * std::numbers::pi * slant_m * f_center_hz);
  return r * r;
}

inline double snr_s2g(const ParameterSet& p, double slant_m) {
  const auto& d = p.derived;
  const double ls = free_space_loss(slant_m, p.sg_center_hz);
  return p.sg_tx_power_w * d.sg_gain * p.slant_path_length * d.rain_factor * ls /
         (d.noise_density_w_per_hz * p.sg_bandwidth_hz);
}

inline double rate_satellite(const ParameterSet& p, LinkKind kind, double slant_m) {
  const auto& d = p.derived;
  double power = 0, gain = 0, f = 0;
  if (kind == LinkKind::u2s) {
    power = p.us_tx_power_w;
    gain = d.us_gain;
    f = p.us_center_hz;
  } else if (kind == LinkKind::s2s) {
    power = p.ss_tx_power_w;
    gain = d.ss_gain;
    f = p.ss_center_hz;
  } else {
    throw DomainError("rate_satellite only covers U2S and S2S");
  }
  const double ls = free_space_loss(slant_m, f);
  return power * gain * ls * d.line_loss /
         (d.required_ebn0 * p.boltzmann * p.system_noise_temp_k * p.max_slant_range_m);
}

// Rate of a transmission link whose endpoints sit at `from` and `to`.
inline double link_rate(LinkKind kind, const ParameterSet& p, Vec3 from, Vec3 to) {
  switch (kind) {
    case LinkKind::g2u: return shannon_rate(p.gu_bandwidth_hz, snr_g2u(p, to, from));
    case LinkKind::u2g: return shannon_rate(p.gu_bandwidth_hz, snr_u2g(p, from, to));
    case LinkKind::u2u: return shannon_rate(p.uu_bandwidth_hz, snr_u2u(p, distance(from, to)));
    case LinkKind::s2g: return shannon_rate(p.sg_bandwidth_hz, snr_s2g(p, distance(from, to)));
    case LinkKind::u2s:
    case LinkKind::s2s: return rate_satellite(p, kind, distance(from, to));
    case LinkKind::storage: break;
  }
  throw DomainError("storage links carry no transmission rate");
}

}  // namespace sagin
