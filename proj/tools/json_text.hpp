// Copyright 2026 The actiongate Authors
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

#include <string>

#include <json.hpp>

namespace actiongate::cli {

using Json = nlohmann::ordered_json;

/// Serializes with "%.17g" numbers, two-space indentation and '\n' line
/// endings. Non-finite numbers become the strings "inf", "-inf", "nan".
std::string to_text(const Json& j);

}  // namespace actiongate::cli
