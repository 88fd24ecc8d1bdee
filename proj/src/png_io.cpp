#include "octshift/png_io.hpp"

#include <zlib.h>

#include <cstring>

#include "octshift/container_io.hpp"

namespace octshift {

namespace {

void append_u32_be(std::string& out, std::uint32_t v) {
  for (int i = 3; i >= 0; --i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void append_chunk(std::string& out, const char type[4], const std::string& payload) {
  append_u32_be(out, static_cast<std::uint32_t>(payload.size()));
  const std::size_t crc_start = out.size();
  out.append(type, 4);
  out += payload;
  const auto crc =
      crc32(0, reinterpret_cast<const Bytef*>(out.data() + crc_start), static_cast<uInt>(4 + payload.size()));
  append_u32_be(out, static_cast<std::uint32_t>(crc));
}

}  // namespace

void write_bscan_png(const Eigen::Ref<const ImageF>& bscan, const std::filesystem::path& path) {
  const int h = static_cast<int>(bscan.rows());
  const int w = static_cast<int>(bscan.cols());

  // Raw scanlines, filter type 0 per row.
  std::string raw;
  raw.reserve(static_cast<std::size_t>(h) * (w + 1));
  for (int r = 0; r < h; ++r) {
    raw.push_back(0);
    for (int c = 0; c < w; ++c) raw.push_back(static_cast<char>(detail::quantize_u8(bscan(r, c))));
  }

  uLongf compressed_size = compressBound(static_cast<uLong>(raw.size()));
  std::string compressed(compressed_size, '\0');
  if (compress2(reinterpret_cast<Bytef*>(compressed.data()), &compressed_size,
                reinterpret_cast<const Bytef*>(raw.data()), static_cast<uLong>(raw.size()),
                Z_DEFAULT_COMPRESSION) != Z_OK)
    throw DataError("PNG deflate failed for " + path.string());
  compressed.resize(compressed_size);

  std::string png("\x89PNG\r\n\x1a\n", 8);
  std::string ihdr;
  append_u32_be(ihdr, static_cast<std::uint32_t>(w));
  append_u32_be(ihdr, static_cast<std::uint32_t>(h));
  ihdr.push_back(8);   // bit depth
  ihdr.push_back(0);   // grayscale
  ihdr.push_back(0);   // compression
  ihdr.push_back(0);   // filter
  ihdr.push_back(0);   // no interlace
  append_chunk(png, "IHDR", ihdr);
  append_chunk(png, "IDAT", compressed);
  append_chunk(png, "IEND", "");
  atomic_write_file(path, png);
}

}  // namespace octshift
