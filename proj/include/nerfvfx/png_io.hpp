// Copyright 2026 The nerfvfx Authors
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

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "nerfvfx/error.hpp"
#include "nerfvfx/file_io.hpp"
#include "nerfvfx/image.hpp"

namespace nerfvfx {

/// Normalized sample to an integer code at `bit_depth`, rounding half away
/// from zero and clamping to the code range.
inline std::uint16_t quantize(float value, int bit_depth) {
  const double max_code = bit_depth == 16 ? 65535.0 : 255.0;
  const double scaled = std::round(static_cast<double>(value) * max_code);
  return static_cast<std::uint16_t>(std::clamp(scaled, 0.0, max_code));
}

inline float dequantize(std::uint16_t code, int bit_depth) {
  const float max_code = bit_depth == 16 ? 65535.0f : 255.0f;
  return static_cast<float>(code) / max_code;
}

namespace detail {

struct PngReadCursor {
  std::span<const std::uint8_t> data;
  std::size_t offset = 0;
};

struct PngErrorState {
  char message[256] = {};
};

extern "C" inline void png_error_to_jump(png_structp png, png_const_charp msg) {
  auto* state = static_cast<PngErrorState*>(png_get_error_ptr(png));
  if (state != nullptr) {
    std::strncpy(state->message, msg, sizeof(state->message) - 1);
  }
  png_longjmp(png, 1);
}

extern "C" inline void png_ignore_warning(png_structp, png_const_charp) {}

extern "C" inline void png_read_from_span(png_structp png, png_bytep out,
                                          png_size_t length) {
  auto* cursor = static_cast<PngReadCursor*>(png_get_io_ptr(png));
  if (cursor->offset + length > cursor->data.size()) {
    png_error(png, "unexpected end of data");
  }
  std::memcpy(out, cursor->data.data() + cursor->offset, length);
  cursor->offset += length;
}

extern "C" inline void png_write_to_vector(png_structp png, png_bytep data,
                                           png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

extern "C" inline void png_flush_noop(png_structp) {}

struct DecodedPng {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int channels = 0;
  int bit_depth = 0;
  std::vector<std::uint8_t> bytes;
  std::vector<png_bytep> rows;
};

// libpng reports errors by longjmp; nothing with a destructor may live in
// this frame across the setjmp.
inline bool decode_png_raw(PngReadCursor* cursor, DecodedPng* out,
                           PngErrorState* err) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, err,
                                           png_error_to_jump, png_ignore_warning);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_set_read_fn(png, cursor, png_read_from_span);
  png_read_info(png, info);

  const int color_type = png_get_color_type(png, info);
  const bool has_trns = png_get_valid(png, info, PNG_INFO_tRNS) != 0;
  png_set_expand(png);
  if (color_type == PNG_COLOR_TYPE_GRAY_ALPHA ||
      (color_type == PNG_COLOR_TYPE_GRAY && has_trns)) {
    png_set_gray_to_rgb(png);
  }
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  out->width = png_get_image_width(png, info);
  out->height = png_get_image_height(png, info);
  out->channels = png_get_channels(png, info);
  out->bit_depth = png_get_bit_depth(png, info);
  const png_size_t row_bytes = png_get_rowbytes(png, info);
  out->bytes.resize(row_bytes * out->height);
  out->rows.resize(out->height);
  for (png_uint_32 y = 0; y < out->height; ++y) {
    out->rows[y] = out->bytes.data() + y * row_bytes;
  }
  png_read_image(png, out->rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

inline bool encode_png_raw(const ImagePlane* img,
                           const std::vector<std::uint8_t>* packed,
                           std::vector<std::uint8_t>* out, PngErrorState* err) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, err,
                                            png_error_to_jump,
                                            png_ignore_warning);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, out, png_write_to_vector, png_flush_noop);
  const int color_type = img->channels == 1   ? PNG_COLOR_TYPE_GRAY
                         : img->channels == 3 ? PNG_COLOR_TYPE_RGB
                                              : PNG_COLOR_TYPE_RGBA;
  png_set_IHDR(png, info, static_cast<png_uint_32>(img->width),
               static_cast<png_uint_32>(img->height), img->source_bit_depth,
               color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t row_bytes = static_cast<std::size_t>(img->width) *
                                img->channels * (img->source_bit_depth / 8);
  for (int y = 0; y < img->height; ++y) {
    png_write_row(png, const_cast<png_bytep>(packed->data() + y * row_bytes));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

}  // namespace detail

/// Decodes a PNG held in memory. Palette and sub-byte images are expanded
/// to 8 bits; gray with alpha becomes RGBA.
inline ImagePlane decode_png(std::span<const std::uint8_t> data,
                             const std::string& name = "<memory>") {
  detail::PngReadCursor cursor{data, 0};
  detail::DecodedPng raw;
  detail::PngErrorState err;
  if (!detail::decode_png_raw(&cursor, &raw, &err)) {
    throw Error(ErrorCode::DecodeError,
                err.message[0] != '\0' ? err.message : "not a readable PNG", {},
                name);
  }
  if (raw.channels != 1 && raw.channels != 3 && raw.channels != 4) {
    throw Error(ErrorCode::DecodeError,
                "unsupported channel count " + std::to_string(raw.channels), {},
                name);
  }

  ImagePlane img(static_cast<int>(raw.width), static_cast<int>(raw.height),
                 raw.channels, raw.bit_depth == 16 ? 16 : 8);
  if (img.source_bit_depth == 16) {
    for (std::size_t i = 0; i < img.samples.size(); ++i) {
      const auto code = static_cast<std::uint16_t>(
          (raw.bytes[2 * i] << 8) | raw.bytes[2 * i + 1]);
      img.samples[i] = dequantize(code, 16);
    }
  } else {
    for (std::size_t i = 0; i < img.samples.size(); ++i) {
      img.samples[i] = dequantize(raw.bytes[i], 8);
    }
  }
  return img;
}

inline ImagePlane read_png(const std::filesystem::path& path) {
  std::vector<std::uint8_t> data;
  try {
    data = read_binary_file(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::DecodeError, e.what(), {}, path.string());
  }
  return decode_png(data, path.string());
}

/// Encodes at `img.source_bit_depth` (8 or 16).
inline std::vector<std::uint8_t> encode_png(const ImagePlane& img) {
  if (img.channels != 1 && img.channels != 3 && img.channels != 4) {
    throw Error(ErrorCode::DimensionMismatch, "PNG output needs 1, 3 or 4 channels");
  }
  if (img.source_bit_depth != 8 && img.source_bit_depth != 16) {
    throw Error(ErrorCode::OutOfRange, "PNG output bit depth must be 8 or 16");
  }
  if (img.width <= 0 || img.height <= 0 ||
      img.samples.size() != img.pixel_count() * img.channels) {
    throw Error(ErrorCode::DimensionMismatch, "image buffer does not match its size");
  }

  std::vector<std::uint8_t> packed;
  packed.reserve(img.samples.size() * (img.source_bit_depth / 8));
  for (float v : img.samples) {
    const std::uint16_t code = quantize(v, img.source_bit_depth);
    if (img.source_bit_depth == 16) {
      packed.push_back(static_cast<std::uint8_t>(code >> 8));
    }
    packed.push_back(static_cast<std::uint8_t>(code & 0xff));
  }

  std::vector<std::uint8_t> out;
  detail::PngErrorState err;
  if (!detail::encode_png_raw(&img, &packed, &out, &err)) {
    throw Error(ErrorCode::IoError,
                err.message[0] != '\0' ? err.message : "PNG encoding failed");
  }
  return out;
}

inline void write_png(const std::filesystem::path& path, const ImagePlane& img) {
  const auto bytes = encode_png(img);
  write_file_atomic(path, std::span<const std::uint8_t>(bytes));
}

}  // namespace nerfvfx
