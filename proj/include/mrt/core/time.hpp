// Copyright 2026 The MRT Authors
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
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace mrt {

// Seconds since 1970-01-01T00:00:00Z.
using Timestamp = std::int64_t;

// Accepts YYYY-MM-DD, YYYY-MM-DDTHH:MM, YYYY-MM-DDTHH:MM:SS, with ' ' allowed
// in place of 'T' and an optional trailing 'Z'. Times are taken as UTC.
// Throws DomainError on anything else.
Timestamp parse_iso8601(std::string_view text);

// YYYY-MM-DDTHH:MM:SSZ
std::string format_iso8601(Timestamp ts);

}  // namespace mrt
