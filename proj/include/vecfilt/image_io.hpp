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

#include <filesystem>
#include <string>

#include "vecfilt/image.hpp"

namespace vecfilt {

/// Loads an 8-bit RGB image. The format is detected from the file contents:
/// PNG (RGB, or RGBA with the alpha channel dropped and a warning printed to
/// stderr) or binary PPM P6 with maxval 255. Anything else (16-bit, palette,
/// grayscale, ASCII PPM, ...) raises IoError naming the offending property.
Image load_image(const std::filesystem::path& path);

/// Saves an image; the format is chosen by extension (.png, .ppm). The file
/// is written to a temporary name in the same directory and renamed into
/// place, so readers never observe a partial file.
void save_image(const Image& img, const std::filesystem::path& path);

/// Writes raw bytes atomically (temp file + rename). Shared by the image
/// writers and the benchmark report writers.
void atomic_write_file(const std::filesystem::path& path, const std::string& bytes);

} // namespace vecfilt
