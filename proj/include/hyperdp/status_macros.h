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

#ifndef HYPERDP_STATUS_MACROS_H_
#define HYPERDP_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define HYPERDP_STATUS_CONCAT_INNER_(x, y) x##y
#define HYPERDP_STATUS_CONCAT_(x, y) HYPERDP_STATUS_CONCAT_INNER_(x, y)

#define HYPERDP_RETURN_IF_ERROR(expr)          \
  do {                                         \
    const absl::Status _hyperdp_st = (expr);   \
    if (!_hyperdp_st.ok()) return _hyperdp_st; \
  } while (0)

#define HYPERDP_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, rexpr) \
  auto tmp = (rexpr);                                   \
  if (!tmp.ok()) return tmp.status();                   \
  lhs = std::move(tmp).value()

#define HYPERDP_ASSIGN_OR_RETURN(lhs, rexpr) \
  HYPERDP_ASSIGN_OR_RETURN_IMPL_(            \
      HYPERDP_STATUS_CONCAT_(_hyperdp_statusor_, __LINE__), lhs, rexpr)

#endif  // HYPERDP_STATUS_MACROS_H_
