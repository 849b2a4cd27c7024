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

#include "mergesafe/kernels/dispatch.hpp"

#include <cstdlib>

namespace mergesafe::kernels
{

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

std::optional<Isa> parse_isa(std::string_view name)
{
  if (name == "scalar") return Isa::Scalar;
  if (name == "avx2") return Isa::Avx2;
  return std::nullopt;
}

bool isa_supported(Isa isa)
{
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(MERGESAFE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

std::vector<Isa> supported_isas()
{
  std::vector<Isa> out{Isa::Scalar};
  if (isa_supported(Isa::Avx2)) out.push_back(Isa::Avx2);
  return out;
}

Isa active_isa()
{
  static const Isa resolved = [] {
    if (const char * env = std::getenv("MERGESAFE_ISA")) {
      if (const auto requested = parse_isa(env); requested && isa_supported(*requested)) {
        return *requested;
      }
    }
    return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  }();
  return resolved;
}

}  // namespace mergesafe::kernels
