#include <gtest/gtest.h>

#include "support.hpp"

using namespace sagin;
using namespace sagin::testing;

TEST(Formulas, MatchIndependentCalculator) {
  const auto vectors = load_formula_vectors(formula_vectors_path());
  ASSERT_EQ(vectors.size(), 20u);
  for (const auto& v : vectors) EXPECT_LE(relative_error(evaluate_formula(v), v.expected), 1e-9) << v.name;
}

TEST(Channel, ShannonRateOfUnitSnr) { EXPECT_DOUBLE_EQ(shannon_rate(2e6, 1.0), 2e6); }

TEST(Channel, GroundSnrFallsWithSquaredDistance) {
  const ParameterSet p = default_parameters();
  const double near = snr_g2u(p, {0, 0, 100}, {0, 0, 0});
  const double far = snr_g2u(p, {0, 0, 200}, {0, 0, 0});
  EXPECT_NEAR(near / far, 4.0, 1e-12);
}

TEST(Channel, UplinkAndDownlinkDifferOnlyInPower) {
  const ParameterSet p = default_parameters();
  const Vec3 u{30, 40, 100}, g{0, 0, 0};
  EXPECT_NEAR(snr_u2g(p, u, g) / snr_g2u(p, u, g), p.uav_tx_power_w / p.ground_tx_power_w, 1e-12);
}

TEST(Channel, U2uPathLossGrowsTwentyDbPerDecade) {
  EXPECT_NEAR(path_loss_u2u(100, 2.4e9) - path_loss_u2u(10, 2.4e9), 20.0, 1e-12);
}

TEST(Channel, SatelliteRateFallsWithSlantSquared) {
  const ParameterSet p = default_parameters();
  EXPECT_NEAR(rate_satellite(p, LinkKind::u2s, 500e3) / rate_satellite(p, LinkKind::u2s, 1000e3), 4.0, 1e-12);
}

TEST(Channel, DegenerateInputsThrow) {
  const ParameterSet p = default_parameters();
  EXPECT_THROW(snr_g2u(p, {0, 0, 0}, {0, 0, 0}), DomainError);
  EXPECT_THROW(path_loss_u2u(0, 2.4e9), DomainError);
  EXPECT_THROW(free_space_loss(-1, 1e9), DomainError);
  EXPECT_THROW(rate_satellite(p, LinkKind::s2g, 1e6), DomainError);
  EXPECT_THROW(link_rate(LinkKind::storage, p, {}, {1, 0, 0}), DomainError);
}

TEST(Channel, LinkKindNamesRoundTrip) {
  for (LinkKind k : {LinkKind::g2u, LinkKind::u2g, LinkKind::u2u, LinkKind::u2s, LinkKind::s2s, LinkKind::s2g,
                     LinkKind::storage})
    EXPECT_EQ(parse_link_kind(link_kind_name(k)), k);
}

TEST(Energy, HoverPathEnergyIsHoverPowerTimesTau) {
  const ParameterSet p = default_parameters();
  const auto e = uav_slot_energy(p, {5, 5, 100}, {5, 5, 100}, 5.0, {});
  EXPECT_DOUBLE_EQ(e.path, hover_power(p) * 5.0);
  EXPECT_EQ(e.communication, 0.0);
}

TEST(Energy, MovePowerIsLinearInSpeed) {
  const ParameterSet p = default_parameters();
  EXPECT_EQ(move_power(p, 0), 0.0);
  EXPECT_NEAR(move_power(p, 6) * 2, move_power(p, 12), 1e-12);
  EXPECT_THROW(move_power(p, 13), DomainError);
}

TEST(Energy, SatelliteOperationAccruesEverySlot) {
  const ParameterSet p = default_parameters();
  const auto e = satellite_slot_energy(p, {}, {}, 5.0);
  EXPECT_EQ(e.total(), p.sat_operation_power_w * 5.0);
}

TEST(Energy, LedgerRefusesChargesBeyondBudget) {
  EnergyLedger ledger(2, 100.0, 50.0);
  EXPECT_TRUE(ledger.charge_compute(0, 1.0, 10.0));
  EXPECT_EQ(ledger.enforced_total(0), 60.0);
  EXPECT_FALSE(ledger.charge_compute(0, 1.0));
  EXPECT_EQ(ledger.enforced_total(0), 60.0);
  EXPECT_TRUE(ledger.charge_operation(0, 40.0));
  EXPECT_FALSE(ledger.charge_operation(0, 1e-9));
  ledger.record(1, EnergyCategory::path, 1e6);
  EXPECT_EQ(ledger.enforced_total(1), 0.0);
  EXPECT_EQ(ledger.total(1), 1e6);
}
