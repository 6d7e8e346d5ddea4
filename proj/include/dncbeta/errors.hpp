// Copyright 2026 The dncbeta Authors
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

#ifndef DNCBETA_ERRORS_HPP
#define DNCBETA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dncbeta {

/// Thrown when a computation would exceed a configured size budget
/// (slab cells, oracle truncation lengths).
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dncbeta

#endif  // DNCBETA_ERRORS_HPP
