/*
 * Copyright 2026 The odaccel Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ODACCEL_ERROR_H_
#define ODACCEL_ERROR_H_

#include <stdexcept>
#include <string>

namespace odaccel {

// Malformed or inconsistent input data (bad CSV cells, dimension mismatch,
// corrupt bundle arrays). The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration or command-line usage. The CLI maps these to exit
// code 1, as it does std::invalid_argument raised by library preconditions.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace odaccel

#endif  // ODACCEL_ERROR_H_
