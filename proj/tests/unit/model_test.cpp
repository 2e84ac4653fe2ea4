#include <gtest/gtest.h>

#include <algorithm>
#include <limits>

#include "clusterxy/error.hpp"
#include "clusterxy/model.hpp"
#include "test_support.hpp"

namespace cxy {
namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected cxy::Error";
  return Errc::invalid_argument;
}

TEST(MakeModel, BuildsXzyMember) {
  const ModelSpec spec = make_model(8, 1.0, {{BlockKind::X, 0.75, 1}, {BlockKind::Y, 0.25, 1}});
  EXPECT_EQ(spec.sites(), 8);
  EXPECT_EQ(spec.field(), 1.0);
  EXPECT_EQ(spec, preset_xnmy(1, 1, 0.5, 1.0, 8));
  EXPECT_EQ(spec.count(BlockKind::X), 1);
  EXPECT_EQ(spec.count(BlockKind::Y), 1);
}

TEST(MakeModel, EmptyBlocksAndZeroFieldIsAllowed) {
  const ModelSpec spec = make_model(4, 0.0, {});
  EXPECT_TRUE(spec.blocks().empty());
  EXPECT_TRUE(to_pauli_strings(spec).empty());
}

TEST(MakeModel, RejectsInvalidInputs) {
  EXPECT_EQ(code_of([] { make_model(4, 1.0, {{BlockKind::X, 1.0, 3}}); }), Errc::block_too_long);
  EXPECT_EQ(code_of([] { make_model(1, 1.0, {}); }), Errc::invalid_size);
  EXPECT_EQ(code_of([] { make_model(4, std::numeric_limits<double>::quiet_NaN(), {}); }),
            Errc::non_finite_parameter);
  EXPECT_EQ(code_of([] { make_model(4, 1.0, {{BlockKind::Y, std::numeric_limits<double>::infinity(), 0}}); }),
            Errc::non_finite_parameter);
  EXPECT_EQ(code_of([] { make_model(4, 1.0, {{BlockKind::X, 1.0, -1}}); }), Errc::invalid_block);
}

TEST(MakeModel, KeepsZeroStrengthAndDuplicateBlocks) {
  const ModelSpec spec = make_model(6, 0.2, {{BlockKind::X, 0.0, 1}, {BlockKind::X, 0.5, 1}, {BlockKind::X, 0.5, 1}});
  EXPECT_EQ(spec.blocks().size(), 3U);
}

TEST(Presets, XnmyCoefficients) {
  const ModelSpec ising = preset_xnmy(0, 0, 1.0, 0.5, 8);
  EXPECT_EQ(ising.blocks()[0], (BlockSpec{BlockKind::X, 1.0, 0}));
  EXPECT_EQ(ising.blocks()[1], (BlockSpec{BlockKind::Y, 0.0, 0}));
  const ModelSpec halfway = preset_xnmy(3, 3, 0.5, 0.0, 8);
  EXPECT_EQ(halfway, preset_halfway_xy(0.5, 0.0, 8));
  EXPECT_EQ(halfway.blocks()[0].mediators, 3);
}

TEST(Presets, GhzClusterCoefficients) {
  const ModelSpec g0 = preset_ghz_cluster(0.0, 8);
  EXPECT_EQ(g0.field(), 1.0);
  EXPECT_EQ(g0.blocks()[0], (BlockSpec{BlockKind::X, 2.0, 0}));
  EXPECT_EQ(g0.blocks()[1], (BlockSpec{BlockKind::X, -1.0, 1}));
  const ModelSpec g1 = preset_ghz_cluster(1.0, 8);
  EXPECT_EQ(g1.field(), 4.0);
  EXPECT_EQ(g1.blocks()[0].strength, 0.0);
  EXPECT_EQ(g1.blocks()[1].strength, 0.0);
  const ModelSpec gm1 = preset_ghz_cluster(-1.0, 8);
  EXPECT_EQ(gm1.field(), 0.0);
  EXPECT_EQ(gm1.blocks()[0].strength, 0.0);
  EXPECT_EQ(gm1.blocks()[1].strength, -4.0);
  EXPECT_EQ(code_of([] { preset_ghz_cluster(0.5, 7); }), Errc::invalid_size);
}

TEST(Presets, SptAfmCoefficients) {
  const ModelSpec plain = preset_spt_afm(1.0, 8, false);
  EXPECT_EQ(plain.field(), 0.0);
  EXPECT_EQ(plain.blocks()[0], (BlockSpec{BlockKind::X, 1.0, 1}));
  EXPECT_EQ(plain.blocks()[1], (BlockSpec{BlockKind::Y, -1.0, 0}));
  EXPECT_EQ(preset_spt_afm(1.0, 8, true).blocks()[0].mediators, 3);
  // lambda = 0 leaves only the XZX cluster term.
  for (const PauliString& s : to_pauli_strings(preset_spt_afm(0.0, 8, false))) {
    EXPECT_EQ(std::count(s.letters.begin(), s.letters.end(), 'X'), 2);
    EXPECT_EQ(std::count(s.letters.begin(), s.letters.end(), 'Z'), 1);
  }
  EXPECT_EQ(code_of([] { preset_spt_afm(1.0, 3, false); }), Errc::invalid_size);
  EXPECT_EQ(code_of([] { preset_spt_afm(1.0, 9, true); }), Errc::invalid_size);
}

TEST(PauliStrings, TwoSiteIsing) {
  const std::vector<PauliString> s = to_pauli_strings(preset_xnmy(0, 0, 1.0, 0.0, 2));
  ASSERT_EQ(s.size(), 2U);
  EXPECT_EQ(s[0], (PauliString{-1.0, "XX"}));
  EXPECT_EQ(s[1], (PauliString{-1.0, "XX"}));
}

TEST(PauliStrings, XzyWrapsAroundTheRing) {
  std::vector<PauliString> s = to_pauli_strings(preset_xnmy(1, 1, 1.0, 0.3, 4));
  std::sort(s.begin(), s.end());
  std::vector<PauliString> expected{{-1.0, "XZXI"}, {-1.0, "IXZX"}, {-1.0, "XIXZ"}, {-1.0, "ZXIX"},
                                    {-0.3, "ZIII"}, {-0.3, "IZII"}, {-0.3, "IIZI"}, {-0.3, "IIIZ"}};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(s, expected);
}

TEST(PauliStrings, GhzClusterAtZero) {
  const std::vector<PauliString> s = to_pauli_strings(preset_ghz_cluster(0.0, 4));
  ASSERT_EQ(s.size(), 12U);
  int xx = 0, xzx = 0, z = 0;
  for (const PauliString& p : s) {
    const auto count = [&](char c) { return std::count(p.letters.begin(), p.letters.end(), c); };
    if (count('X') == 2 && count('Z') == 0) {
      EXPECT_EQ(p.coefficient, -2.0);
      ++xx;
    } else if (count('X') == 2 && count('Z') == 1) {
      EXPECT_EQ(p.coefficient, 1.0);
      ++xzx;
    } else if (count('Z') == 1) {
      EXPECT_EQ(p.coefficient, -1.0);
      ++z;
    }
  }
  EXPECT_EQ(xx, 4);
  EXPECT_EQ(xzx, 4);
  EXPECT_EQ(z, 4);
}

TEST(PauliStrings, CountMatchesBlocksPlusField) {
  const ModelSpec spec = make_model(7, 0.4, {{BlockKind::X, 0.3, 2}, {BlockKind::Y, -0.2, 5}, {BlockKind::X, 1.0, 0}});
  EXPECT_EQ(to_pauli_strings(spec).size(), 7U * 4U);
}

TEST(PauliStrings, TranslationCovariance) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int sites = 2 + trial % 9;
    const ModelSpec spec = testing::random_model(rng, sites);
    std::vector<PauliString> strings = to_pauli_strings(spec);
    std::vector<PauliString> shifted = strings;
    for (PauliString& p : shifted) std::rotate(p.letters.rbegin(), p.letters.rbegin() + 1, p.letters.rend());
    std::sort(strings.begin(), strings.end());
    std::sort(shifted.begin(), shifted.end());
    EXPECT_EQ(strings, shifted) << describe(spec);
  }
}

TEST(PauliStrings, EveryPresetRoundTripsThroughValidation) {
  for (const auto& preset : testing::all_presets()) {
    for (int sites : {4, 6, 8, 10}) {
      const ModelSpec spec = preset.make(0.7, sites);
      const std::vector<BlockSpec> blocks(spec.blocks().begin(), spec.blocks().end());
      EXPECT_EQ(make_model(spec.sites(), spec.field(), blocks), spec) << preset.name;
      for (const PauliString& p : to_pauli_strings(spec)) EXPECT_EQ(p.letters.size(), static_cast<std::size_t>(sites));
    }
  }
}

TEST(Describe, EchoesEveryParameter) {
  EXPECT_EQ(describe(preset_xnmy(1, 1, 0.5, 1.0, 8)), "sites=8 field=1 blocks=[X:0.75:1 Y:0.25:1]");
}

}  // namespace
}  // namespace cxy
