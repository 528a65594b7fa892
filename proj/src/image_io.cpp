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

#include "vecfilt/image_io.hpp"

#include <png.h>

#include <atomic>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "vecfilt/errors.hpp"

namespace vecfilt {

namespace {

constexpr unsigned char kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) throw IoError("read failure on " + path.string());
  return std::move(buf).str();
}

// ---- PPM P6 ----

// Skips whitespace and '#' comments between header tokens.
void skip_ppm_space(const std::string& data, std::size_t& pos) {
  while (pos < data.size()) {
    if (std::isspace(static_cast<unsigned char>(data[pos]))) {
      ++pos;
    } else if (data[pos] == '#') {
      while (pos < data.size() && data[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
}

long parse_ppm_int(const std::string& data, std::size_t& pos, const std::filesystem::path& path) {
  skip_ppm_space(data, pos);
  std::size_t start = pos;
  while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) ++pos;
  if (pos == start) throw IoError(path.string() + ": malformed PPM header");
  return std::stol(data.substr(start, pos - start));
}

Image load_ppm(const std::string& data, const std::filesystem::path& path) {
  std::size_t pos = 2; // past "P6"
  const long w = parse_ppm_int(data, pos, path);
  const long h = parse_ppm_int(data, pos, path);
  const long maxval = parse_ppm_int(data, pos, path);
  if (maxval != 255) {
    throw IoError(path.string() + ": unsupported PPM maxval " + std::to_string(maxval) +
                  " (only 8-bit maxval 255 is supported)");
  }
  if (w < 1 || h < 1) throw IoError(path.string() + ": invalid PPM dimensions");
  ++pos; // exactly one whitespace byte after maxval
  const std::size_t need = std::size_t(w) * std::size_t(h) * 3;
  if (data.size() - pos < need) throw IoError(path.string() + ": truncated PPM pixel data");

  std::vector<Rgb> pixels(std::size_t(w) * h);
  std::memcpy(pixels.data(), data.data() + pos, need);
  return Image(int(h), int(w), std::move(pixels));
}

std::string encode_ppm(const Image& img) {
  std::string out = "P6\n" + std::to_string(img.cols()) + " " + std::to_string(img.rows()) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + img.pixel_count() * 3);
  std::memcpy(out.data() + header, img.pixels().data(), img.pixel_count() * 3);
  return out;
}

// ---- PNG (libpng) ----

struct PngMemory {
  const unsigned char* data;
  std::size_t size;
  std::size_t pos;
};

void png_mem_read(png_structp png, png_bytep out, png_size_t n) {
  auto* mem = static_cast<PngMemory*>(png_get_io_ptr(png));
  if (mem->pos + n > mem->size) {
    png_error(png, "truncated PNG stream");
  }
  std::memcpy(out, mem->data + mem->pos, n);
  mem->pos += n;
}

void png_string_write(png_structp png, png_bytep data, png_size_t n) {
  auto* out = static_cast<std::string*>(png_get_io_ptr(png));
  out->append(reinterpret_cast<const char*>(data), n);
}

void png_string_flush(png_structp) {}

Image load_png(const std::string& data, const std::filesystem::path& path) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng allocation failure");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("libpng allocation failure");
  }

  std::vector<Rgb> pixels;
  std::vector<png_bytep> row_ptrs;
  int width = 0, height = 0;
  std::string error;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(path.string() + ": PNG decode error");
  }

  PngMemory mem{reinterpret_cast<const unsigned char*>(data.data()), data.size(), 0};
  png_set_read_fn(png, &mem, png_mem_read);
  png_read_info(png, info);

  width = int(png_get_image_width(png, info));
  height = int(png_get_image_height(png, info));
  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);

  if (bit_depth != 8) {
    error = path.string() + ": unsupported PNG bit depth " + std::to_string(bit_depth) +
            " (only 8-bit is supported)";
  } else if (color_type == PNG_COLOR_TYPE_PALETTE) {
    error = path.string() + ": unsupported PNG color type: palette";
  } else if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
    error = path.string() + ": unsupported PNG color type: grayscale";
  } else if (color_type != PNG_COLOR_TYPE_RGB && color_type != PNG_COLOR_TYPE_RGB_ALPHA) {
    error = path.string() + ": unsupported PNG color type " + std::to_string(color_type);
  }
  if (!error.empty()) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(error);
  }
  if (color_type == PNG_COLOR_TYPE_RGB_ALPHA) {
    std::cerr << "warning: " << path.string() << ": ignoring alpha channel\n";
    png_set_strip_alpha(png);
  }
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  pixels.resize(std::size_t(width) * height);
  row_ptrs.resize(std::size_t(height));
  for (int r = 0; r < height; ++r) {
    row_ptrs[std::size_t(r)] = reinterpret_cast<png_bytep>(pixels.data() + std::size_t(r) * width);
  }
  png_read_image(png, row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  return Image(height, width, std::move(pixels));
}

std::string encode_png(const Image& img) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng allocation failure");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng allocation failure");
  }

  std::string out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG encode error");
  }
  png_set_write_fn(png, &out, png_string_write, png_string_flush);
  png_set_IHDR(png, info, png_uint_32(img.cols()), png_uint_32(img.rows()), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int r = 0; r < img.rows(); ++r) {
    png_write_row(png, reinterpret_cast<png_const_bytep>(img.row(r)));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = char(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

} // namespace

Image load_image(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  if (data.size() >= 8 && std::memcmp(data.data(), kPngSignature, 8) == 0) {
    return load_png(data, path);
  }
  if (data.size() >= 2 && data[0] == 'P' && data[1] == '6') {
    return load_ppm(data, path);
  }
  if (data.size() >= 2 && data[0] == 'P' && data[1] >= '1' && data[1] <= '5') {
    throw IoError(path.string() + ": unsupported netpbm variant P" + std::string(1, data[1]) +
                  " (only binary P6 is supported)");
  }
  throw IoError(path.string() + ": unrecognized image format (expected PNG or PPM P6)");
}

void atomic_write_file(const std::filesystem::path& path, const std::string& bytes) {
  static std::atomic<unsigned> counter{0};
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), std::streamsize(bytes.size()));
    if (!out.good()) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("write failure on " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

void save_image(const Image& img, const std::filesystem::path& path) {
  const std::string ext = lower_extension(path);
  std::string bytes;
  if (ext == ".png") {
    bytes = encode_png(img);
  } else if (ext == ".ppm") {
    bytes = encode_ppm(img);
  } else {
    throw IoError(path.string() + ": unsupported output extension '" + ext +
                  "' (use .png or .ppm)");
  }
  atomic_write_file(path, bytes);
}

} // namespace vecfilt
