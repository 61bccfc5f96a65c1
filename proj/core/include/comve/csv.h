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

#ifndef COMVE_CSV_H_
#define COMVE_CSV_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace comve::csv {

struct Row {
  std::size_t line = 0;  // 1-based physical line on which the record starts
  std::vector<std::string> fields;
};

// Parses RFC 4180 style CSV: double-quoted fields may contain commas, CR/LF
// and doubled quotes. LF and CRLF record terminators are both accepted.
// A UTF-8 byte order mark at the very start is skipped. Blank lines are
// dropped. Throws Error(kParse) naming the line of a malformed record.
std::vector<Row> Parse(std::string_view text);

// Reads a whole file and parses it. Throws Error(kIo) if unreadable.
std::vector<Row> ReadFile(const std::string& path);

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string Escape(std::string_view field);

void WriteRow(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace comve::csv

#endif  // COMVE_CSV_H_
