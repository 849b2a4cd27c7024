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

#ifndef MERGESAFE__CORE__ERROR_HPP_
#define MERGESAFE__CORE__ERROR_HPP_

#include <stdexcept>
#include <string>

namespace mergesafe
{

enum class ErrorKind { Validation, Io };

/// Error raised by ingestion, validation and report writing. The kind maps onto
/// the CLI exit status (validation 1, I/O 2).
class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, const std::string & message)
  : std::runtime_error(message), kind_(kind)
  {
  }

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

inline Error validation_error(const std::string & message)
{
  return Error(ErrorKind::Validation, message);
}

inline Error io_error(const std::string & message) { return Error(ErrorKind::Io, message); }

}  // namespace mergesafe

#endif  // MERGESAFE__CORE__ERROR_HPP_
