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

// On-disk model bundles: a directory holding manifest.json and one raw
// little-endian float64 file per array. The manifest records every array as
// {"file": <relative path>, "shape": [...]} and lists all files under
// "files".

#ifndef ODACCEL_BUNDLE_H_
#define ODACCEL_BUNDLE_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "odaccel/array_store.h"

namespace odaccel {

inline constexpr int kBundleFormatVersion = 1;
inline constexpr const char* kManifestName = "manifest.json";

// Writes every array as <dir>/<prefix><name>.f64 and returns the manifest
// index for the group. Relative paths are appended to `inventory`.
nlohmann::json WriteArrayGroup(const std::filesystem::path& dir,
                               const std::string& prefix,
                               const ArrayMap& arrays,
                               std::vector<std::string>& inventory);

// Reads a group written by WriteArrayGroup. Throws DataError on missing files
// or size mismatches.
ArrayMap ReadArrayGroup(const std::filesystem::path& dir,
                        const nlohmann::json& index);

// Adds format_version and the "files" inventory, then writes manifest.json
// with stable formatting.
void WriteManifest(const std::filesystem::path& dir, nlohmann::json manifest,
                   const std::vector<std::string>& inventory);

// Parses manifest.json, checks format_version and that every inventoried
// file exists. `kind` must match the manifest's "kind" field.
nlohmann::json ReadManifest(const std::filesystem::path& dir,
                            const std::string& kind);

}  // namespace odaccel

#endif  // ODACCEL_BUNDLE_H_
