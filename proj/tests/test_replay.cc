// Copyright 2026 The R3D2 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "r3d2/replay/buffer.h"
#include "r3d2/rng.h"
#include "r3d2/util.h"

using r3d2::SplitMix64;
using r3d2::replay::BufferConfig;
using r3d2::replay::ReplayBuffer;
using r3d2::replay::SumTree;
using r3d2::replay::Trajectory;

namespace {

Trajectory MakeTrajectory(int steps, int player_count) {
  Trajectory t;
  t.player_count = player_count;
  for (int i = 0; i < steps; ++i) {
    t.tokens.obs.push_back({2, 3});
    t.tokens.cands.push_back({{4}, {5}});
    t.tokens.chosen.push_back(0);
    t.tokens.rewards.push_back(0.0f);
  }
  return t;
}

BufferConfig SmallConfig(int capacity, double alpha = 0.9) {
  BufferConfig cfg;
  cfg.capacity = capacity;
  cfg.alpha = alpha;
  cfg.burn_in_frames = 0;
  return cfg;
}

}  // namespace

TEST_CASE("sum tree keeps parents equal to child sums") {
  SumTree tree(37);
  SplitMix64 rng(5);
  for (int op = 0; op < 20000; ++op) {
    int idx = static_cast<int>(rng.NextBelow(37));
    tree.Set(idx, rng.NextDouble() * 10.0);
    if (op % 500 == 0) REQUIRE(tree.ParentsConsistent());
  }
  CHECK(tree.ParentsConsistent());

  double reference = 0;
  for (int i = 0; i < 37; ++i) reference += tree.Get(i);
  CHECK(tree.Total() == doctest::Approx(reference).epsilon(1e-12));
}

TEST_CASE("append starts at slot 0 with unit priority") {
  ReplayBuffer buffer(SmallConfig(8));
  CHECK(buffer.Append(MakeTrajectory(3, 2)) == 0);
  CHECK(buffer.TotalMass() == doctest::Approx(1.0));
  CHECK(buffer.size() == 1);
}

TEST_CASE("ring overwrites the oldest slot under saturation") {
  ReplayBuffer buffer(SmallConfig(4));
  for (int i = 0; i < 4; ++i) {
    CHECK(buffer.Append(MakeTrajectory(1, 2)) == i);
  }
  CHECK(buffer.Append(MakeTrajectory(1, 3)) == 0);
  CHECK(buffer.Append(MakeTrajectory(1, 4)) == 1);
  CHECK(buffer.size() == 4);
}

TEST_CASE("full-capacity ring keeps size at capacity") {
  BufferConfig cfg = SmallConfig(50000);
  ReplayBuffer buffer(cfg);
  for (int i = 0; i < 50001; ++i) {
    int slot = buffer.Append(MakeTrajectory(1, 2));
    if (i == 50000) CHECK(slot == 0);
  }
  CHECK(buffer.size() == 50000);
}

TEST_CASE("mixed player counts coexist in one buffer") {
  ReplayBuffer buffer(SmallConfig(16));
  buffer.Append(MakeTrajectory(2, 2));
  buffer.Append(MakeTrajectory(3, 5));
  auto batch = buffer.Sample(8, 42);
  bool saw2 = false, saw5 = false;
  for (const auto& t : batch.trajectories) {
    saw2 |= t.player_count == 2;
    saw5 |= t.player_count == 5;
  }
  CHECK(saw2);
  CHECK(saw5);
}

TEST_CASE("over-long trajectories are rejected") {
  BufferConfig cfg = SmallConfig(4);
  cfg.max_trajectory_length = 80;
  ReplayBuffer buffer(cfg);
  CHECK_THROWS_AS(buffer.Append(MakeTrajectory(81, 2)), r3d2::ProtocolError);
  CHECK(buffer.Append(MakeTrajectory(80, 2)) == 0);
}

TEST_CASE("sampling respects burn-in") {
  BufferConfig cfg = SmallConfig(8);
  cfg.burn_in_frames = 10;
  ReplayBuffer buffer(cfg);
  buffer.Append(MakeTrajectory(4, 2));
  CHECK(!buffer.Ready());
  CHECK_THROWS_AS(buffer.Sample(2, 1), r3d2::NotReadyError);
  buffer.Append(MakeTrajectory(6, 2));
  CHECK(buffer.Ready());
  CHECK_NOTHROW(buffer.Sample(2, 1));
}

TEST_CASE("draw frequencies follow priority^alpha") {
  SUBCASE("alpha=1 gives a 1:3 ratio") {
    ReplayBuffer buffer(SmallConfig(2, /*alpha=*/1.0));
    buffer.Append(MakeTrajectory(1, 2));
    buffer.Append(MakeTrajectory(1, 2));
    buffer.UpdatePriorities({0, 1}, {1, 1}, {{1.0f}, {3.0f}});
    int hits[2] = {0, 0};
    const int draws = 100000;
    auto batch_seed = SplitMix64(99);
    for (int i = 0; i < draws; ++i) {
      auto batch = buffer.Sample(1, batch_seed.Next());
      ++hits[batch.slots[0]];
    }
    CHECK(hits[1] / static_cast<double>(draws) ==
          doctest::Approx(0.75).epsilon(0.02));
  }

  SUBCASE("alpha=0 samples uniformly regardless of priorities") {
    ReplayBuffer buffer(SmallConfig(2, /*alpha=*/0.0));
    buffer.Append(MakeTrajectory(1, 2));
    buffer.Append(MakeTrajectory(1, 2));
    buffer.UpdatePriorities({0, 1}, {1, 1}, {{1.0f}, {3.0f}});
    int hits[2] = {0, 0};
    const int draws = 100000;
    auto batch_seed = SplitMix64(7);
    for (int i = 0; i < draws; ++i) {
      auto batch = buffer.Sample(1, batch_seed.Next());
      ++hits[batch.slots[0]];
    }
    CHECK(hits[0] / static_cast<double>(draws) ==
          doctest::Approx(0.5).epsilon(0.02));
  }
}

TEST_CASE("equal priorities give unit importance weights") {
  ReplayBuffer buffer(SmallConfig(4));
  for (int i = 0; i < 4; ++i) buffer.Append(MakeTrajectory(2, 2));
  auto batch = buffer.Sample(4, 3);
  for (double w : batch.weights) CHECK(w == doctest::Approx(1.0));
}

TEST_CASE("priority mixes max and mean of step TD errors") {
  ReplayBuffer buffer(SmallConfig(4, /*alpha=*/1.0));
  buffer.Append(MakeTrajectory(3, 2));
  buffer.Append(MakeTrajectory(3, 2));

  buffer.UpdatePriorities({0}, {1}, {{1.0f, 1.0f, 1.0f}});
  // max == mean == 1
  auto batch = buffer.Sample(1, 11);

  buffer.UpdatePriorities({1}, {1}, {{0.0f, 0.0f, 2.0f}});
  // 0.9*2 + 0.1*(2/3) = 1.866666...
  double expected = 0.9 * 2.0 + 0.1 * (2.0 / 3.0);
  CHECK(buffer.TotalMass() == doctest::Approx(1.0 + expected).epsilon(1e-9));
}

TEST_CASE("zero TD errors make a slot unsampleable") {
  ReplayBuffer buffer(SmallConfig(2, /*alpha=*/1.0));
  buffer.Append(MakeTrajectory(1, 2));
  buffer.Append(MakeTrajectory(1, 2));
  buffer.UpdatePriorities({0}, {1}, {{0.0f}});
  auto seeds = SplitMix64(31);
  for (int i = 0; i < 2000; ++i) {
    auto batch = buffer.Sample(1, seeds.Next());
    CHECK(batch.slots[0] == 1);
  }
}

TEST_CASE("stale priority updates are dropped") {
  ReplayBuffer buffer(SmallConfig(2, /*alpha=*/1.0));
  buffer.Append(MakeTrajectory(1, 2));
  buffer.Append(MakeTrajectory(1, 2));
  auto batch = buffer.Sample(2, 17);
  // Overwrite both slots, invalidating the sampled stamps.
  buffer.Append(MakeTrajectory(1, 3));
  buffer.Append(MakeTrajectory(1, 3));
  double before = buffer.TotalMass();
  buffer.UpdatePriorities(batch.slots, batch.stamps, {{9.0f}, {9.0f}});
  CHECK(buffer.TotalMass() == doctest::Approx(before));
  CHECK(buffer.stale_updates() == 2);
}

TEST_CASE("debug dump lists slot metadata") {
  ReplayBuffer buffer(SmallConfig(4));
  buffer.Append(MakeTrajectory(2, 3));
  std::string dump = buffer.DebugDump();
  CHECK(dump.find("\"length\":2") != std::string::npos);
  CHECK(dump.find("\"player_count\":3") != std::string::npos);
}
