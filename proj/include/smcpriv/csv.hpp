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

#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "smcpriv/numeric.hpp"

namespace smcpriv {

// Plain CSV emitter: optional '#' comment lines, one header row, data rows.
// Numbers are formatted with %.17g so identical computations produce
// byte-identical files.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void comment(const std::string& text);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);

  static std::string fmt(double v);
  static std::string fmt(std::int64_t v) { return std::to_string(v); }

 private:
  std::ofstream out_;
  std::string path_;
};

}  // namespace smcpriv
