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

#ifndef MERGESAFE__GEOMETRY__TTC_ORACLE_HPP_
#define MERGESAFE__GEOMETRY__TTC_ORACLE_HPP_

#include "mergesafe/geometry/ttc.hpp"

#include <optional>

namespace mergesafe
{

/// Brute-force reference for ttc(). Both boxes advance under constant
/// velocity in steps of `dt`; the result is k * dt for the first step k whose
/// interval [(k-1) dt, k dt] contains an overlap (k = 0 tests the initial
/// configuration). Each step is checked with a separating-axis test over the
/// four edge normals applied to the step's swept projections, so contacts
/// shorter than one step are not skipped. Touching within 1e-9 m counts.
/// None when no overlap occurs within `horizon`.
/// Throws std::invalid_argument unless dt > 0 and horizon > 0.
std::optional<double> ttc_oracle(const PairState & pair, double dt, double horizon);

/// Earliest time in [0, horizon] at which the boxes touch or overlap, from
/// the same per-axis projection intervals without time stepping.
std::optional<double> first_contact_time(const PairState & pair, double horizon);

}  // namespace mergesafe

#endif  // MERGESAFE__GEOMETRY__TTC_ORACLE_HPP_
