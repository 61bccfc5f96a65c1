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
#include "comve/csv.h"

#include <ostream>

#include "comve/error.h"
#include "comve/io.h"

namespace comve::csv {

std::vector<Row> Parse(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<Row> rows;
  Row row;
  std::string field;
  bool quoted = false;       // inside a quoted section
  bool after_quote = false;  // just closed a quoted section
  bool any = false;          // current record has content
  std::size_t line = 1;
  row.line = 1;

  auto end_field = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    after_quote = false;
  };
  auto end_record = [&] {
    // A record consisting of a single empty unquoted field is a blank line.
    if (any) {
      end_field();
      rows.push_back(std::move(row));
    }
    row = Row{};
    field.clear();
    after_quote = false;
    any = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_record();
      ++line;
      row.line = line;
      continue;
    }
    if (!any) row.line = line;
    any = true;
    if (c == ',') {
      end_field();
    } else if (c == '"') {
      if (!field.empty() || after_quote) {
        Fail(ErrorKind::kParse, "line " + std::to_string(line) +
                                    ": unexpected quote inside field");
      }
      quoted = true;
    } else {
      if (after_quote) {
        Fail(ErrorKind::kParse,
             "line " + std::to_string(line) +
                 ": characters after closing quote of field");
      }
      field.push_back(c);
    }
  }
  if (quoted) {
    Fail(ErrorKind::kParse, "line " + std::to_string(row.line) +
                                ": unterminated quoted field");
  }
  end_record();
  return rows;
}

std::vector<Row> ReadFile(const std::string& path) {
  return Parse(ReadTextFile(path));
}

std::string Escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void WriteRow(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << Escape(fields[i]);
  }
  out << '\n';
}

}  // namespace comve::csv
