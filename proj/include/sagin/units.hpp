#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sagin {

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kEarthRadius = 6371e3;
inline constexpr double kEarthMu = 3.986004418e14;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

struct Vec3 {
  double x = 0, y = 0, z = 0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double k, Vec3 a) { return {k * a.x, k * a.y, k * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double squared_norm(Vec3 v) { return v.x * v.x + v.y * v.y + v.z * v.z; }
inline double norm(Vec3 v) { return std::sqrt(squared_norm(v)); }
inline double distance(Vec3 a, Vec3 b) { return norm(a - b); }

}  // namespace sagin
