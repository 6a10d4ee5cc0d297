#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "fdsl/render.hpp"

namespace fdsl {

using Bytes = std::vector<std::uint8_t>;

/// 8-bit grayscale, non-interlaced PNG at a fixed zlib level.
Bytes encode_png(const RasterImage& img);

/// Decodes any PNG libpng understands into 8-bit gray. Throws IntegrityError
/// on malformed input.
RasterImage decode_png(std::span<const std::uint8_t> bytes, std::uint8_t background_value);

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);
std::uint64_t fnv1a64(std::string_view text);

/// Throws IoError.
Bytes read_file(const std::filesystem::path& path);

/// Writes through a temporary sibling and renames, so readers never observe
/// a partial file. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

}  // namespace fdsl
