/*
 * Copyright 2026 The ovalue Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace ovalue {

/// Raised when a test set lacks one of the two classes, so the prevalence
/// rate is 0 or 1 and nothing can be conditioned on it.
class DegeneratePrevalence : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input data (bad labels, unparseable scores, missing columns).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ovalue
