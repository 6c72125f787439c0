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

#include "odaccel/bundle.h"

#include <fstream>

#include "odaccel/error.h"

namespace odaccel {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Manifest paths must stay inside the bundle directory.
fs::path InsideBundle(const fs::path& dir, const std::string& file) {
  const fs::path rel(file);
  if (file.empty() || rel.is_absolute()) {
    throw DataError("bundle path '" + file + "' is not relative");
  }
  for (const auto& part : rel) {
    if (part == "..") {
      throw DataError("bundle path '" + file + "' leaves the bundle");
    }
  }
  return dir / rel;
}

}  // namespace

json WriteArrayGroup(const fs::path& dir, const std::string& prefix,
                     const ArrayMap& arrays,
                     std::vector<std::string>& inventory) {
  json index = json::object();
  for (const auto& [name, array] : arrays) {
    if (array.element_count() != array.data.size()) {
      throw std::logic_error("array '" + name + "' does not match its shape");
    }
    const std::string file = prefix + name + ".f64";
    const fs::path full = dir / file;
    fs::create_directories(full.parent_path());
    WriteFloat64File(full.string(), array.data);
    index[name] = {{"file", file}, {"shape", array.shape}};
    inventory.push_back(file);
  }
  return index;
}

ArrayMap ReadArrayGroup(const fs::path& dir, const json& index) {
  if (!index.is_object()) throw DataError("array index must be an object");
  ArrayMap arrays;
  try {
    for (const auto& [name, entry] : index.items()) {
      NamedArray array;
      array.shape = entry.at("shape").get<std::vector<std::size_t>>();
      const auto file = entry.at("file").get<std::string>();
      array.data = ReadFloat64File(InsideBundle(dir, file).string(),
                                   array.element_count());
      arrays.emplace(name, std::move(array));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed array index: ") + e.what());
  }
  return arrays;
}

void WriteManifest(const fs::path& dir, json manifest,
                   const std::vector<std::string>& inventory) {
  manifest["format_version"] = kBundleFormatVersion;
  manifest["files"] = inventory;
  fs::create_directories(dir);
  std::ofstream out(dir / kManifestName, std::ios::trunc);
  if (!out) throw DataError("cannot write manifest in '" + dir.string() + "'");
  out << manifest.dump(2) << '\n';
}

json ReadManifest(const fs::path& dir, const std::string& kind) {
  std::ifstream in(dir / kManifestName);
  if (!in) throw DataError("no manifest in '" + dir.string() + "'");
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    throw DataError(std::string("corrupt manifest: ") + e.what());
  }
  if (!manifest.is_object() || !manifest.contains("format_version") ||
      manifest["format_version"] != kBundleFormatVersion) {
    throw DataError("unsupported bundle format version");
  }
  if (manifest.value("kind", "") != kind) {
    throw DataError("bundle in '" + dir.string() + "' is not a " + kind);
  }
  const json files = manifest.value("files", json::array());
  if (!files.is_array()) throw DataError("manifest 'files' must be a list");
  for (const auto& file : files) {
    if (!file.is_string()) throw DataError("manifest file entry not a string");
    if (!fs::exists(InsideBundle(dir, file.get<std::string>()))) {
      throw DataError("bundle file missing: " + file.get<std::string>());
    }
  }
  return manifest;
}

}  // namespace odaccel
