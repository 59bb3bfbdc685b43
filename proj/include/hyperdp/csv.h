// Copyright 2026 The HyperDP Authors
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

#ifndef HYPERDP_CSV_H_
#define HYPERDP_CSV_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace hyperdp {

// Shortest decimal text that parses back to exactly `value` ('.' decimal
// point, locale independent). Never rounds: printed values carry every
// significant digit needed to identify the double.
std::string FormatDouble(double value);

// RFC 4180 field: quoted (with doubled quotes) iff it contains a comma,
// quote, CR or LF.
std::string CsvField(std::string_view field);

// Joins escaped fields with commas and terminates the record with "\n".
std::string CsvRecord(const std::vector<std::string>& fields);

// Parses RFC 4180 text (LF or CRLF line breaks, quoted fields with
// embedded separators). A trailing line break does not start a new record.
absl::StatusOr<std::vector<std::vector<std::string>>> ParseCsv(
    std::string_view text);

// Locale-independent strict parse of a whole field.
absl::StatusOr<double> ParseDouble(std::string_view text);

}  // namespace hyperdp

#endif  // HYPERDP_CSV_H_
