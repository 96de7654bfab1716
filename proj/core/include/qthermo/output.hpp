// Copyright 2026 The qthermo Authors
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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qthermo {

inline constexpr const char* kOutDirEnv = "QTHERMO_OUT_DIR";

/// `flag` when given, else $QTHERMO_OUT_DIR, else the working directory.
std::filesystem::path resolve_out_dir(const std::optional<std::string>& flag);

/// Writes to a temporary sibling and renames it over `path`. Creates missing
/// parent directories. InvalidInput on I/O failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Collects output files and writes them only on commit().
class StagedOutputs {
 public:
  void add(std::filesystem::path path, std::string contents);
  void commit();
  const std::vector<std::pair<std::filesystem::path, std::string>>& files() const { return files_; }

 private:
  std::vector<std::pair<std::filesystem::path, std::string>> files_;
};

}  // namespace qthermo
