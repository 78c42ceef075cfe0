// Copyright 2026 The BeQuP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BEQUP_INSTANCE_IO_H_
#define BEQUP_INSTANCE_IO_H_

#include <filesystem>
#include <string>

#include "bequp/network_model.h"

namespace bequp {

/// Parses {"segments":[...], "link_p":[...]} or
/// {"incidence":[[0/1,...],...], "link_p":[...]}. Throws std::invalid_argument
/// on malformed documents.
Instance parse_instance_json(const std::string &text);
Instance load_instance(const std::filesystem::path &path);

/// Writes the segmented form when the topology has one, else the incidence form.
std::string instance_to_json(const Instance &instance);

/// Multi-line human-readable dump of a GapReport.
std::string format_gap_report(const Instance &instance, const GapReport &report);

}  // namespace bequp

#endif  // BEQUP_INSTANCE_IO_H_
