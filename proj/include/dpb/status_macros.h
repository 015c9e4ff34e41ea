// Copyright 2026 The dpb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPB_STATUS_MACROS_H_
#define DPB_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define DPB_RETURN_IF_ERROR(expr)            \
  do {                                       \
    const absl::Status dpb_status_ = (expr); \
    if (!dpb_status_.ok()) return dpb_status_; \
  } while (0)

#define DPB_CONCAT_INNER_(a, b) a##b
#define DPB_CONCAT_(a, b) DPB_CONCAT_INNER_(a, b)

#define DPB_ASSIGN_OR_RETURN(lhs, expr) \
  DPB_ASSIGN_OR_RETURN_IMPL_(DPB_CONCAT_(dpb_statusor_, __LINE__), lhs, expr)

#define DPB_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, expr) \
  auto statusor = (expr);                               \
  if (!statusor.ok()) return statusor.status();         \
  lhs = std::move(statusor).value()

#endif  // DPB_STATUS_MACROS_H_
