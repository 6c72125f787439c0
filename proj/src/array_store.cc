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

#include "odaccel/array_store.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "odaccel/error.h"

namespace odaccel {

namespace {

std::uint64_t ToLittleEndian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    return __builtin_bswap64(v);
  }
}

}  // namespace

std::size_t NamedArray::element_count() const {
  std::size_t count = 1;
  for (std::size_t s : shape) count *= s;
  return count;
}

const NamedArray& RequireArray(const ArrayMap& arrays,
                               const std::string& name) {
  const auto it = arrays.find(name);
  if (it == arrays.end()) throw DataError("missing array '" + name + "'");
  if (it->second.element_count() != it->second.data.size()) {
    throw DataError("array '" + name + "' does not match its shape");
  }
  return it->second;
}

void WriteFloat64File(const std::string& path, std::span<const double> values) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path + "'");
  std::vector<std::uint64_t> raw(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    raw[i] = ToLittleEndian(std::bit_cast<std::uint64_t>(values[i]));
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t)));
  if (!out) throw DataError("short write to '" + path + "'");
}

std::vector<double> ReadFloat64File(const std::string& path,
                                    std::size_t expected_count) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw DataError("cannot open '" + path + "'");
  const auto size = static_cast<std::size_t>(in.tellg());
  if (size != expected_count * sizeof(double)) {
    throw DataError("'" + path + "' holds " + std::to_string(size) +
                    " bytes, expected " +
                    std::to_string(expected_count * sizeof(double)));
  }
  in.seekg(0);
  std::vector<std::uint64_t> raw(expected_count);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(size));
  if (!in) throw DataError("short read from '" + path + "'");
  std::vector<double> values(expected_count);
  for (std::size_t i = 0; i < expected_count; ++i) {
    values[i] = std::bit_cast<double>(ToLittleEndian(raw[i]));
  }
  return values;
}

}  // namespace odaccel
