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

#ifndef HYPERDP_CLI_H_
#define HYPERDP_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"

namespace hyperdp {

// Process exit codes of the command-line tool; stable across releases.
enum ExitCode : int {
  kExitSuccess = 0,
  // Bad flags, invalid configuration or input files, capped problem sizes.
  kExitValidation = 1,
  // Runtime or numeric failure (I/O, overflow, internal errors).
  kExitRuntime = 2,
  // A request whose privacy guarantee cannot be certified, made without the
  // matching acknowledgment.
  kExitPrivacyRefusal = 3,
};

// InvalidArgument, NotFound and ResourceExhausted map to kExitValidation,
// FailedPrecondition to kExitPrivacyRefusal, everything else to
// kExitRuntime.
int ExitCodeForStatus(const absl::Status& status);

// Runs the tool on `args` (without the program name). Results go to `out`
// (or to files named by --out flags, written atomically); diagnostics go to
// `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace hyperdp

#endif  // HYPERDP_CLI_H_
