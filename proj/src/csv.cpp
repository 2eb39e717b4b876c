// Copyright 2026 The smcpriv Authors
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

#include "smcpriv/csv.hpp"

#include <cstdio>

namespace smcpriv {

CsvWriter::CsvWriter(const std::string& path) : out_(path), path_(path) {
  if (!out_) throw Error("cannot open output file: " + path);
}

void CsvWriter::comment(const std::string& text) {
  out_ << "# " << text << '\n';
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  row(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
  if (!out_) throw Error("write failed: " + path_);
}

std::string CsvWriter::fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace smcpriv
