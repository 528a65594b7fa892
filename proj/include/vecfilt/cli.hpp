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

#include <string>

namespace vecfilt {

/// The vecfilt command line: noise, filter, metrics, and bench subcommands.
/// Exit codes: 0 success, 2 I/O errors, 3 configuration/usage errors,
/// 4 numeric errors, 1 anything else.
int cli_main(int argc, const char* const* argv);

/// Help footer listing every measure id with its default parameters.
std::string measure_catalog_help();

} // namespace vecfilt
