// Copyright 2026 The ComVE Harness Authors
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
#ifndef COMVE_REPORT_H_
#define COMVE_REPORT_H_

#include <optional>
#include <string>

#include "comve/analysis.h"

namespace comve {

// Fraction rendered as a percentage with one decimal: 0.959 -> "95.9".
std::string FormatPercent(double fraction);

struct RenderedReport {
  std::string text;
  std::string json;
};

// Deterministic text table (percent, one decimal) and JSON document (full
// precision). The replacement section is omitted when the table is absent or
// has no rows.
RenderedReport RenderReport(const EvalReport& report,
                            const std::optional<ReplacementTable>& table = {});

}  // namespace comve

#endif  // COMVE_REPORT_H_
