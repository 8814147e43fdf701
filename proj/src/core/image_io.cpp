// Copyright 2026 The aprkit Authors.
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

#include "aprkit/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "aprkit/transforms.hpp"

namespace aprkit {
namespace {

namespace fs = std::filesystem;

std::string Lowercase(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

// Interleaved 8-bit samples -> planar [0, 1] image.
Image FromInterleaved(const std::uint8_t* bytes, std::size_t height,
                      std::size_t width, std::size_t channels) {
  RealGrid grid({height, width, channels});
  for (std::size_t y = 0; y < height; ++y)
    for (std::size_t x = 0; x < width; ++x)
      for (std::size_t c = 0; c < channels; ++c)
        grid.at(c, y, x) = bytes[(y * width + x) * channels + c] / 255.0;
  return Image(std::move(grid));
}

std::vector<std::uint8_t> ToInterleaved(const Image& image) {
  const std::size_t h = image.height(), w = image.width(), ch = image.channels();
  std::vector<std::uint8_t> bytes(h * w * ch);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x)
      for (std::size_t c = 0; c < ch; ++c)
        bytes[(y * w + x) * ch + c] = QuantizeToByte(image.at(c, y, x));
  return bytes;
}

Image ReadPng(const fs::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str())) {
    const std::string msg = png.message;
    png_image_free(&png);
    Fail(ErrorKind::kData, path.string() + ": " + msg);
  }
  if (png.format & PNG_FORMAT_FLAG_ALPHA) {
    png_image_free(&png);
    Fail(ErrorKind::kData, path.string() + ": images with alpha are not supported");
  }
  if (png.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&png);
    Fail(ErrorKind::kData, path.string() + ": 16-bit images are not supported");
  }
  const bool color = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
  png.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (png.width == 0 || png.height == 0) {
    png_image_free(&png);
    Fail(ErrorKind::kDimension, path.string() + ": zero-sized image");
  }
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    Fail(ErrorKind::kData, path.string() + ": " + msg);
  }
  return FromInterleaved(buffer.data(), png.height, png.width, color ? 3 : 1);
}

void WritePng(const Image& image, const fs::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width());
  png.height = static_cast<png_uint_32>(image.height());
  png.format = image.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const std::vector<std::uint8_t> bytes = ToInterleaved(image);
  if (!png_image_write_to_file(&png, path.c_str(), 0, bytes.data(), 0,
                               nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    Fail(ErrorKind::kIo, path.string() + ": " + msg);
  }
}

// Reads the next whitespace-separated header token, skipping # comments.
std::string PnmToken(const std::vector<std::uint8_t>& data, std::size_t& pos) {
  while (pos < data.size()) {
    if (std::isspace(data[pos])) {
      ++pos;
    } else if (data[pos] == '#') {
      while (pos < data.size() && data[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
  std::string token;
  while (pos < data.size() && !std::isspace(data[pos])) token += static_cast<char>(data[pos++]);
  return token;
}

Image ReadPnm(const fs::path& path, const std::vector<std::uint8_t>& data) {
  std::size_t pos = 0;
  const std::string magic = PnmToken(data, pos);
  const std::size_t channels = magic == "P6" ? 3 : 1;
  std::size_t width = 0, height = 0, maxval = 0;
  try {
    width = std::stoul(PnmToken(data, pos));
    height = std::stoul(PnmToken(data, pos));
    maxval = std::stoul(PnmToken(data, pos));
  } catch (const std::exception&) {
    Fail(ErrorKind::kData, path.string() + ": malformed PNM header");
  }
  if (maxval != 255) {
    Fail(ErrorKind::kData, path.string() + ": only 8-bit PNM is supported");
  }
  if (width == 0 || height == 0) {
    Fail(ErrorKind::kDimension, path.string() + ": zero-sized image");
  }
  ++pos;  // single whitespace byte before the raster
  const std::size_t need = width * height * channels;
  if (data.size() < pos + need) {
    Fail(ErrorKind::kData, path.string() + ": truncated raster");
  }
  return FromInterleaved(data.data() + pos, height, width, channels);
}

void WritePnm(const Image& image, const fs::path& path, bool color) {
  if ((image.channels() == 3) != color) {
    Fail(ErrorKind::kInvalidArgument,
         path.string() + ": channel count does not match the PNM variant");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  out << (color ? "P6" : "P5") << '\n'
      << image.width() << ' ' << image.height() << "\n255\n";
  const std::vector<std::uint8_t> bytes = ToInterleaved(image);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) Fail(ErrorKind::kIo, "failed writing " + path.string());
}

}  // namespace

Image ReadImage(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  static constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G',
                                                    '\r', '\n', 0x1A, '\n'};
  if (data.size() >= 8 && std::memcmp(data.data(), kPngSignature, 8) == 0) {
    return ReadPng(path);
  }
  if (data.size() >= 2 && data[0] == 'P' && (data[1] == '5' || data[1] == '6')) {
    return ReadPnm(path, data);
  }
  Fail(ErrorKind::kData, path.string() + ": unsupported image format");
}

void WriteImage(const Image& image, const fs::path& path) {
  const std::string ext = Lowercase(path.extension().string());
  if (ext == ".png") {
    WritePng(image, path);
  } else if (ext == ".pgm") {
    WritePnm(image, path, /*color=*/false);
  } else if (ext == ".ppm") {
    WritePnm(image, path, /*color=*/true);
  } else {
    Fail(ErrorKind::kInvalidArgument,
         path.string() + ": unsupported output extension '" + ext + "'");
  }
}

}  // namespace aprkit
