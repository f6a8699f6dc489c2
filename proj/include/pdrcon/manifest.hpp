// Copyright 2026 the pdrcon authors
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

#ifndef PDRCON_MANIFEST_HPP_
#define PDRCON_MANIFEST_HPP_

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pdrcon {

inline constexpr const char* kToolVersion = "0.1.0";

/// Provenance block embedded in every emitted report: the command, a
/// snapshot of its configuration, digests of the input files, the master
/// seed when randomness is involved, and a timestamp. Outputs are a pure
/// function of everything except the timestamp.
struct RunManifest {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  std::optional<std::uint64_t> seed;
  std::string created_utc;

  void add_input(const std::string& path);
  nlohmann::ordered_json to_json() const;
};

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters.
std::string file_digest(const std::string& path);

std::string utc_timestamp();

}  // namespace pdrcon

#endif  // PDRCON_MANIFEST_HPP_
