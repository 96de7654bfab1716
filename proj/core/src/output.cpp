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

#include "qthermo/output.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <system_error>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace fs = std::filesystem;

fs::path resolve_out_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return fs::path(*flag);
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return fs::path(env);
  return fs::current_path();
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
  static std::atomic<unsigned> counter{0};
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) fail(ErrorKind::InvalidInput, "cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp-" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::InvalidInput, "cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp, ec);
      fail(ErrorKind::InvalidInput, "write failed: " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    fail(ErrorKind::InvalidInput, "cannot rename onto " + path.string() + ": " + ec.message());
  }
}

void StagedOutputs::add(fs::path path, std::string contents) {
  files_.emplace_back(std::move(path), std::move(contents));
}

void StagedOutputs::commit() {
  for (const auto& [path, contents] : files_) write_file_atomic(path, contents);
  files_.clear();
}

}  // namespace qthermo
