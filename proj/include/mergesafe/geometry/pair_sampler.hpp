// Copyright 2026 The mergesafe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MERGESAFE__GEOMETRY__PAIR_SAMPLER_HPP_
#define MERGESAFE__GEOMETRY__PAIR_SAMPLER_HPP_

#include "mergesafe/geometry/ttc.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mergesafe
{

/// Random pair for oracle sweeps, a pure function of `seed`: speeds up to
/// 40 m/s, arbitrary headings and directions, lengths and widths in [2, 18] m
/// with width <= length. Odd seeds aim B onto A's relative path so that
/// collisions within 10 s are common.
PairState sample_pair(std::uint64_t seed);

/// Seed of the i-th pair of a sweep started from `base`.
std::uint64_t sweep_seed(std::uint64_t base, std::uint64_t i);

struct NamedPair
{
  std::string name;
  PairState pair;
};

/// Contacts that are tangential, corner-on-corner, edge-sliding or otherwise
/// degenerate for the stepping reference.
std::vector<NamedPair> grazing_corpus();

}  // namespace mergesafe

#endif  // MERGESAFE__GEOMETRY__PAIR_SAMPLER_HPP_
