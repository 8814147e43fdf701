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

#ifndef APRKIT_IMAGE_IO_HPP_
#define APRKIT_IMAGE_IO_HPP_

#include <filesystem>

#include "aprkit/grid.hpp"

namespace aprkit {

// 8-bit gray or RGB PNG (palette images are expanded to RGB), or binary
// PGM/PPM with maxval 255. Values are mapped v / 255. Alpha and 16-bit
// images are rejected with kData; a missing file is kIo.
Image ReadImage(const std::filesystem::path& path);

// Lossless write, format from the extension (.png, .pgm, .ppm); values are
// quantized round(v * 255) with halves up. Gray images may not go to .ppm
// and color images may not go to .pgm.
void WriteImage(const Image& image, const std::filesystem::path& path);

}  // namespace aprkit

#endif  // APRKIT_IMAGE_IO_HPP_
