// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#include <zlib.h>

#include "duoseed/error.hpp"
#include "duoseed/render.hpp"

namespace duoseed {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
    out += static_cast<char>(v >> 24);
    out += static_cast<char>(v >> 16);
    out += static_cast<char>(v >> 8);
    out += static_cast<char>(v);
}

void put_chunk(std::string& out, const char* type, const std::string& data) {
    put_u32(out, static_cast<std::uint32_t>(data.size()));
    const std::size_t start = out.size();
    out.append(type, 4);
    out += data;
    const auto crc = crc32(0L, reinterpret_cast<const Bytef*>(out.data() + start), static_cast<uInt>(out.size() - start));
    put_u32(out, static_cast<std::uint32_t>(crc));
}

} // namespace

std::string encode_png(std::span<const std::uint8_t> rgba, int width, int height) {
    if (width <= 0 || height <= 0) throw RenderError("image dimensions must be positive", "dims");
    const std::size_t stride = static_cast<std::size_t>(width) * 4;
    if (rgba.size() != stride * static_cast<std::size_t>(height))
        throw RenderError("pixel buffer does not match dimensions", "dims");

    // Filter type 0 (None) on every scanline.
    std::string raw;
    raw.reserve((stride + 1) * height);
    for (int y = 0; y < height; ++y) {
        raw += '\0';
        raw.append(reinterpret_cast<const char*>(rgba.data()) + y * stride, stride);
    }
    uLongf packed_size = compressBound(static_cast<uLong>(raw.size()));
    std::string packed(packed_size, '\0');
    if (compress2(reinterpret_cast<Bytef*>(packed.data()), &packed_size,
                  reinterpret_cast<const Bytef*>(raw.data()), static_cast<uLong>(raw.size()), 6) != Z_OK)
        throw RenderError("zlib compression failed");
    packed.resize(packed_size);

    std::string out("\x89PNG\r\n\x1a\n", 8);
    std::string ihdr;
    put_u32(ihdr, static_cast<std::uint32_t>(width));
    put_u32(ihdr, static_cast<std::uint32_t>(height));
    ihdr += '\x08'; // bit depth
    ihdr += '\x06'; // RGBA
    ihdr += '\0';   // deflate
    ihdr += '\0';   // adaptive filtering
    ihdr += '\0';   // no interlace
    put_chunk(out, "IHDR", ihdr);
    put_chunk(out, "IDAT", packed);
    put_chunk(out, "IEND", {});
    return out;
}

} // namespace duoseed
