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

#ifndef MERGESAFE__KERNELS__DISPATCH_HPP_
#define MERGESAFE__KERNELS__DISPATCH_HPP_

#include <optional>
#include <string_view>
#include <vector>

namespace mergesafe::kernels
{

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

/// True when the variant was compiled in and the running CPU supports it.
bool isa_supported(Isa isa);

/// All supported variants, scalar first.
std::vector<Isa> supported_isas();

/// Variant used by default: the best supported one, unless the environment
/// variable MERGESAFE_ISA names another supported variant. Resolved once.
Isa active_isa();

}  // namespace mergesafe::kernels

#endif  // MERGESAFE__KERNELS__DISPATCH_HPP_
