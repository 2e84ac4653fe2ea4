#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "clusterxy/error.hpp"
#include "clusterxy/freefermion.hpp"
#include "clusterxy/oracle.hpp"
#include "test_support.hpp"

namespace cxy {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(ModeData, XzyIsingZeroModeEnergy) {
  for (double h : {-0.5, 0.3, 2.0}) {
    const std::vector<ModeData> modes = mode_data(preset_xnmy(1, 1, 1.0, h, 8), Sector::odd);
    EXPECT_TRUE(modes[0].special);
    EXPECT_NEAR(modes[0].epsilon, 2.0 * (h - 1.0), 1e-14);
  }
}

TEST(ModeData, FreeSpins) {
  for (Sector s : {Sector::odd, Sector::even}) {
    for (const ModeData& m : mode_data(make_model(6, 0.7, {}), s)) {
      EXPECT_EQ(m.alpha, 0.7);
      EXPECT_EQ(m.beta, 0.0);
      EXPECT_EQ(m.theta, 0.0);
      if (!m.special) EXPECT_NEAR(m.epsilon, 1.4, 1e-15);
    }
  }
}

TEST(ModeData, HalfwayEvenSectorEnergy) {
  const std::vector<ModeData> modes = mode_data(preset_halfway_xy(0.5, 0.3, 8), Sector::even);
  EXPECT_NEAR(modes[0].epsilon, 2.0 * std::sqrt(0.09 + 0.25), 1e-12);
  EXPECT_NEAR(modes[0].epsilon, 1.16619, 1e-5);
}

TEST(ModeData, SpecialModesAndPartners) {
  const auto odd8 = mode_data(preset_xnmy(0, 0, 0.5, 0.3, 8), Sector::odd);
  EXPECT_TRUE(odd8[0].special);
  EXPECT_TRUE(odd8[4].special);
  EXPECT_EQ(odd8[3].partner, 5);
  const auto even7 = mode_data(preset_xnmy(0, 0, 0.5, 0.3, 7), Sector::even);
  EXPECT_TRUE(even7[3].special);
  EXPECT_EQ(even7[1].partner, 5);
  const auto odd7 = mode_data(preset_xnmy(0, 0, 0.5, 0.3, 7), Sector::odd);
  EXPECT_TRUE(odd7[0].special);
  EXPECT_FALSE(odd7[3].special);
}

TEST(ModeData, InvariantsOnRandomModels) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const ModelSpec spec = testing::random_model(rng, 2 + trial % 15);
    for (Sector s : {Sector::odd, Sector::even}) {
      const std::vector<ModeData> modes = mode_data(spec, s);
      for (const ModeData& m : modes) {
        if (m.special) {
          EXPECT_EQ(m.epsilon, 2.0 * m.alpha);
          EXPECT_EQ(m.theta, 0.0);
          EXPECT_EQ(m.partner, m.k);
        } else {
          EXPECT_GE(m.epsilon, 0.0);
          EXPECT_NEAR(m.epsilon, 2.0 * std::hypot(m.alpha, m.beta), 1e-14);
          EXPECT_NEAR(m.epsilon, modes[static_cast<std::size_t>(m.partner)].epsilon, 1e-12) << describe(spec);
          // cos 2theta = alpha / |(alpha, beta)| and sin theta carries sgn(beta).
          if (m.epsilon > 0.0) {
            EXPECT_NEAR(std::cos(2.0 * m.theta), 2.0 * m.alpha / m.epsilon, 1e-12);
            EXPECT_GE(std::sin(m.theta) * (m.beta >= 0.0 ? 1.0 : -1.0), -1e-15);
          }
        }
      }
    }
  }
}

TEST(ParityConstrainedMinimum, ThreeFermionOddSector) {
  const std::vector<ModeData> modes = mode_data(preset_xnmy(1, 1, 1.0, -0.5, 8), Sector::odd);
  const ConstrainedMinimum m = parity_constrained_minimum(modes, Parity::odd);
  EXPECT_EQ(m.occupation.size(), 3U);
  EXPECT_NE(std::find(m.occupation.begin(), m.occupation.end(), 0), m.occupation.end());
  EXPECT_NE(std::find(m.occupation.begin(), m.occupation.end(), 4), m.occupation.end());
}

TEST(ParityConstrainedMinimum, PositiveModesGiveTheVacuum) {
  const std::vector<ModeData> modes = mode_data(preset_xnmy(0, 0, 0.5, 2.0, 8), Sector::even);
  double vacuum = 0.0;
  for (const ModeData& m : modes) vacuum -= 0.5 * m.epsilon;
  const ConstrainedMinimum m = parity_constrained_minimum(modes, Parity::even);
  EXPECT_TRUE(m.occupation.empty());
  EXPECT_DOUBLE_EQ(m.energy, vacuum);
}

TEST(ParityConstrainedMinimum, MatchesExhaustiveEnumeration) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    const ModelSpec spec = testing::random_model(rng, 2 + trial % 9);
    for (Sector s : {Sector::odd, Sector::even}) {
      const std::vector<ModeData> modes = mode_data(spec, s);
      const ConstrainedMinimum m = parity_constrained_minimum(modes, required_parity(s));
      EXPECT_NEAR(m.energy, testing::enumerate_sector(spec, s).front(), 1e-12) << describe(spec);
      EXPECT_EQ(m.occupation.size() % 2 == 1, required_parity(s) == Parity::odd);
    }
  }
}

TEST(ParityConstrainedMinimum, HalfwayOddSectorIsDegenerate) {
  const ModelSpec spec = preset_halfway_xy(0.5, 0.5, 8);
  const std::vector<double> all = testing::enumerate_sector(spec, Sector::odd);
  EXPECT_NEAR(all[0], all[1], 1e-12);
  const std::vector<SectorLevel> levels = sector_level_states(spec, Sector::odd, 2);
  EXPECT_NEAR(levels[0].energy, all[0], 1e-12);
  EXPECT_TRUE(nearly_equal_levels(levels[0].energy, levels[1].energy));
  EXPECT_TRUE(solve_sector(spec, Sector::odd).degenerate);
}

TEST(SectorLevels, FreeSpinPairFlip) {
  const std::vector<double> levels = sector_levels(make_model(4, 1.0, {}), Sector::even, 2);
  ASSERT_EQ(levels.size(), 2U);
  EXPECT_NEAR(levels[0], -4.0, 1e-14);
  EXPECT_NEAR(levels[1], 0.0, 1e-14);
}

TEST(SectorLevels, GhzSectorMinimaDifference) {
  const ModelSpec spec = preset_ghz_cluster(0.5, 8);
  const double odd = sector_levels(spec, Sector::odd, 1)[0];
  const double even = sector_levels(spec, Sector::even, 1)[0];
  EXPECT_NEAR(odd - even, 2.0, 1e-12);
}

TEST(SectorLevels, XzyOddSectorMatchesEnumeration) {
  const ModelSpec spec = preset_xnmy(1, 1, 0.5, 0.2, 8);
  const std::vector<double> levels = sector_levels(spec, Sector::odd, 3);
  const std::vector<double> all = testing::enumerate_sector(spec, Sector::odd);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(levels[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(i)], 1e-12);
}

TEST(SectorLevels, DeepLevelsMatchEnumeration) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const ModelSpec spec = testing::random_model(rng, 3 + trial % 8);
    for (Sector s : {Sector::odd, Sector::even}) {
      const std::vector<double> all = testing::enumerate_sector(spec, s);
      const int count = static_cast<int>(std::min<std::size_t>(all.size(), 12));
      const std::vector<SectorLevel> levels = sector_level_states(spec, s, count);
      for (int i = 0; i < count; ++i) {
        const SectorLevel& level = levels[static_cast<std::size_t>(i)];
        EXPECT_NEAR(level.energy, all[static_cast<std::size_t>(i)], 1e-12) << describe(spec);
        EXPECT_EQ(level.occupation.size() % 2 == 1, required_parity(s) == Parity::odd);
      }
    }
  }
}

TEST(SectorLevels, CountBeyondDimensionIsRejected) {
  try {
    sector_levels(make_model(4, 1.0, {}), Sector::even, 9);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::count_exceeds_dimension);
  }
  EXPECT_EQ(sector_levels(make_model(4, 1.0, {}), Sector::even, 8).size(), 8U);
}

TEST(GroundAndGap, LargeChainGapLaws) {
  EXPECT_NEAR(ground_and_gap(preset_spt_afm(0.4, 512, false)).gap, 1.2, 1e-3);
  EXPECT_NEAR(ground_and_gap(preset_xnmy(1, 1, 1.0, 2.0, 1024)).gap, 2.0, 1e-3);
  EXPECT_NEAR(ground_and_gap(preset_ghz_cluster(1.5, 8)).gap, 8.0, 1e-9);
}

TEST(GroundAndGap, Invariants) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const ModelSpec spec = testing::random_model(rng, 2 + trial % 12);
    const GroundReport r = ground_and_gap(spec);
    EXPECT_GE(r.gap, 0.0);
    EXPECT_EQ(r.ground_energy, std::min(r.odd.energy, r.even.energy));
    EXPECT_GE(r.odd.second_energy, r.odd.energy);
    EXPECT_GE(r.even.second_energy, r.even.energy);
  }
}

TEST(GroundAndGap, GapIsNotTheSectorDifference) {
  bool found = false;
  for (int i = -40; i <= 40; ++i) {
    const double h = 0.05 * i;
    const ModelSpec spec = preset_halfway_xy(0.5, h, 8);
    const GroundReport r = ground_and_gap(spec);
    const std::vector<double> exact = oracle::exact_spectrum(oracle::dense_hamiltonian(spec), 2);
    EXPECT_NEAR(r.gap, exact[1] - exact[0], 1e-9) << "h=" << h;
    if (std::abs(r.gap - std::abs(r.even.energy - r.odd.energy)) > 1e-6) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(GroundAndGap, OddChainsMatchExactDiagonalization) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const ModelSpec spec = testing::random_model(rng, trial % 2 == 0 ? 5 : 7);
    const GroundReport r = ground_and_gap(spec);
    const std::vector<double> exact = oracle::exact_spectrum(oracle::dense_hamiltonian(spec), 2);
    EXPECT_NEAR(r.ground_energy, exact[0], 1e-9) << describe(spec);
    EXPECT_NEAR(r.gap, exact[1] - exact[0], 1e-9) << describe(spec);
  }
}

TEST(EvenVacuumAngles, FreeSpinsGiveZeros) {
  for (double theta : even_vacuum_angles(make_model(8, 0.4, {}))) EXPECT_EQ(theta, 0.0);
}

TEST(EvenVacuumAngles, OneAnglePerMomentumPair) {
  EXPECT_EQ(even_vacuum_angles(preset_xnmy(1, 1, 0.5, 0.5, 12)).size(), 6U);
  try {
    even_vacuum_angles(preset_xnmy(1, 1, 0.5, 0.5, 7));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::odd_sites);
  }
}

TEST(EvenVacuumAngles, IsingAtZeroField) {
  const std::vector<double> angles = even_vacuum_angles(preset_xnmy(0, 0, 1.0, 0.0, 8));
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const double mu = 2.0 * kPi * (static_cast<double>(k) + 0.5) / 8.0;
    EXPECT_NEAR(std::tan(2.0 * angles[k]), -std::tan(mu), 1e-12);
    EXPECT_GT(std::sin(angles[k]), 0.0);
  }
}

TEST(SectorLabels, OddSectorIsPeriodic) {
  EXPECT_EQ(momentum_shift(Sector::odd), 0.0);
  EXPECT_EQ(momentum_shift(Sector::even), 0.5);
  EXPECT_EQ(required_parity(Sector::odd), Parity::odd);
  EXPECT_STREQ(to_string(Sector::even), "even");
}

}  // namespace
}  // namespace cxy
