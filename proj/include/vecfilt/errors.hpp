/*
 * Copyright 2026 The vecfilt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
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

namespace vecfilt {

/// File and format problems. The CLI maps these to exit code 2.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration: unknown measure ids, bad parameters, out-of-range
/// probabilities. The CLI maps these to exit code 3.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Numeric failures during evaluation (NaN scores, undefined metrics).
/// The CLI maps these to exit code 4.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace vecfilt
