#include "sentinel/core/image_io.hpp"

#include <zlib.h>

#include <array>
#include <cstring>
#include <fstream>
#include <sstream>

#include "sentinel/core/error.hpp"

namespace sentinel::img {

namespace {

constexpr std::array<std::uint8_t, 8> kPngSignature = {0x89, 'P',  'N',  'G',
                                                       0x0d, 0x0a, 0x1a, 0x0a};

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return bytes;
}

void write_file(const std::string& path, const std::uint8_t* data,
                std::size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(data), static_cast<long>(size));
  if (!out) throw IoError("short write to " + path);
}

std::uint32_t be32(const std::uint8_t* p) {
  return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
         (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void append_chunk(std::vector<std::uint8_t>& out, const char type[4],
                  const std::uint8_t* data, std::size_t size) {
  put_be32(out, static_cast<std::uint32_t>(size));
  std::size_t crc_start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data, data + size);
  std::uint32_t crc = static_cast<std::uint32_t>(
      ::crc32(0, out.data() + crc_start, static_cast<uInt>(size + 4)));
  put_be32(out, crc);
}

std::vector<std::uint8_t> zlib_deflate(const std::uint8_t* data,
                                       std::size_t size) {
  uLongf bound = compressBound(static_cast<uLong>(size));
  std::vector<std::uint8_t> out(bound);
  if (compress2(out.data(), &bound, data, static_cast<uLong>(size), 6) != Z_OK)
    throw IoError("zlib compression failed");
  out.resize(bound);
  return out;
}

std::vector<std::uint8_t> zlib_inflate(const std::uint8_t* data,
                                       std::size_t size,
                                       std::size_t expected) {
  std::vector<std::uint8_t> out(expected);
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) throw IoError("zlib init failed");
  zs.next_in = const_cast<Bytef*>(data);
  zs.avail_in = static_cast<uInt>(size);
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = inflate(&zs, Z_FINISH);
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || zs.avail_out != 0)
    throw IoError("PNG: corrupt or truncated image data");
  return out;
}

int paeth(int a, int b, int c) {
  int p = a + b - c;
  int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

}  // namespace

ImageBuffer read_png(const std::string& path) {
  auto bytes = read_file(path);
  if (bytes.size() < 8 ||
      std::memcmp(bytes.data(), kPngSignature.data(), 8) != 0)
    throw IoError(path + ": not a PNG file");

  std::uint32_t width = 0, height = 0;
  int bit_depth = 0, color_type = -1, interlace = 0;
  std::vector<std::uint8_t> idat;

  std::size_t pos = 8;
  bool seen_iend = false;
  while (pos + 12 <= bytes.size() && !seen_iend) {
    std::uint32_t len = be32(&bytes[pos]);
    if (pos + 12 + len > bytes.size()) throw IoError(path + ": truncated PNG");
    const char* type = reinterpret_cast<const char*>(&bytes[pos + 4]);
    const std::uint8_t* data = &bytes[pos + 8];
    if (std::memcmp(type, "IHDR", 4) == 0) {
      if (len != 13) throw IoError(path + ": bad IHDR");
      width = be32(data);
      height = be32(data + 4);
      bit_depth = data[8];
      color_type = data[9];
      interlace = data[12];
    } else if (std::memcmp(type, "IDAT", 4) == 0) {
      idat.insert(idat.end(), data, data + len);
    } else if (std::memcmp(type, "IEND", 4) == 0) {
      seen_iend = true;
    }
    pos += 12 + len;
  }

  if (width == 0 || height == 0) throw IoError(path + ": missing IHDR");
  if (bit_depth != 8) throw IoError(path + ": only 8-bit PNG supported");
  if (interlace != 0) throw IoError(path + ": interlaced PNG not supported");

  int src_channels;
  switch (color_type) {
    case 0: src_channels = 1; break;  // gray
    case 2: src_channels = 3; break;  // RGB
    case 4: src_channels = 2; break;  // gray + alpha
    case 6: src_channels = 4; break;  // RGBA
    default:
      throw IoError(path + ": unsupported PNG color type " +
                    std::to_string(color_type));
  }

  const std::size_t stride = static_cast<std::size_t>(width) * src_channels;
  const std::size_t raw_size = (stride + 1) * height;
  auto raw = zlib_inflate(idat.data(), idat.size(), raw_size);

  // Undo per-row filters in place (None/Sub/Up/Average/Paeth).
  std::vector<std::uint8_t> prev(stride, 0);
  std::vector<std::uint8_t> row(stride);
  const int bpp = src_channels;
  const int out_channels = (src_channels >= 3) ? 3 : 1;
  ImageBuffer img = ImageBuffer::make(static_cast<int>(width),
                                      static_cast<int>(height), out_channels);

  for (std::uint32_t y = 0; y < height; ++y) {
    const std::uint8_t* src = &raw[(stride + 1) * y];
    int filter = src[0];
    std::memcpy(row.data(), src + 1, stride);
    for (std::size_t i = 0; i < stride; ++i) {
      int a = (i >= static_cast<std::size_t>(bpp)) ? row[i - bpp] : 0;
      int b = prev[i];
      int c = (i >= static_cast<std::size_t>(bpp)) ? prev[i - bpp] : 0;
      int x = row[i];
      switch (filter) {
        case 0: break;
        case 1: x += a; break;
        case 2: x += b; break;
        case 3: x += (a + b) / 2; break;
        case 4: x += paeth(a, b, c); break;
        default: throw IoError(path + ": bad PNG filter type");
      }
      row[i] = static_cast<std::uint8_t>(x & 0xff);
    }
    for (std::uint32_t x = 0; x < width; ++x)
      for (int ch = 0; ch < out_channels; ++ch)
        img.at(static_cast<int>(x), static_cast<int>(y), ch) =
            row[x * src_channels + ch];
    std::swap(prev, row);
  }
  return img;
}

void write_png(const std::string& path, const ImageBuffer& img) {
  const std::size_t stride =
      static_cast<std::size_t>(img.width) * img.channels;
  std::vector<std::uint8_t> raw;
  raw.reserve((stride + 1) * img.height);
  for (int y = 0; y < img.height; ++y) {
    raw.push_back(0);  // filter: none
    const std::uint8_t* row = &img.data[stride * y];
    raw.insert(raw.end(), row, row + stride);
  }
  auto compressed = zlib_deflate(raw.data(), raw.size());

  std::vector<std::uint8_t> out;
  out.insert(out.end(), kPngSignature.begin(), kPngSignature.end());
  std::uint8_t ihdr[13];
  ihdr[0] = static_cast<std::uint8_t>(img.width >> 24);
  ihdr[1] = static_cast<std::uint8_t>(img.width >> 16);
  ihdr[2] = static_cast<std::uint8_t>(img.width >> 8);
  ihdr[3] = static_cast<std::uint8_t>(img.width);
  ihdr[4] = static_cast<std::uint8_t>(img.height >> 24);
  ihdr[5] = static_cast<std::uint8_t>(img.height >> 16);
  ihdr[6] = static_cast<std::uint8_t>(img.height >> 8);
  ihdr[7] = static_cast<std::uint8_t>(img.height);
  ihdr[8] = 8;                                    // bit depth
  ihdr[9] = (img.channels == 3) ? 2 : 0;          // color type
  ihdr[10] = ihdr[11] = ihdr[12] = 0;             // compression/filter/interlace
  append_chunk(out, "IHDR", ihdr, sizeof(ihdr));
  append_chunk(out, "IDAT", compressed.data(), compressed.size());
  append_chunk(out, "IEND", nullptr, 0);
  write_file(path, out.data(), out.size());
}

namespace {

// PNM header token reader: skips whitespace and '#' comments.
int pnm_token(const std::vector<std::uint8_t>& bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    char c = static_cast<char>(bytes[pos]);
    if (c == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++pos;
    } else {
      break;
    }
  }
  int v = 0;
  bool any = false;
  while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
    v = v * 10 + (bytes[pos] - '0');
    ++pos;
    any = true;
  }
  if (!any) throw IoError("malformed PNM header");
  return v;
}

}  // namespace

ImageBuffer read_pnm(const std::string& path) {
  auto bytes = read_file(path);
  if (bytes.size() < 2 || bytes[0] != 'P' ||
      (bytes[1] != '5' && bytes[1] != '6'))
    throw IoError(path + ": not a binary PGM/PPM file");
  int channels = (bytes[1] == '6') ? 3 : 1;
  std::size_t pos = 2;
  int w = pnm_token(bytes, pos);
  int h = pnm_token(bytes, pos);
  int maxval = pnm_token(bytes, pos);
  if (maxval != 255) throw IoError(path + ": PNM maxval must be 255");
  ++pos;  // single whitespace after header
  std::size_t need = static_cast<std::size_t>(w) * h * channels;
  if (bytes.size() - pos < need) throw IoError(path + ": truncated PNM");
  ImageBuffer img = ImageBuffer::make(w, h, channels);
  std::memcpy(img.data.data(), bytes.data() + pos, need);
  return img;
}

void write_pnm(const std::string& path, const ImageBuffer& img) {
  std::ostringstream header;
  header << (img.channels == 3 ? "P6" : "P5") << "\n"
         << img.width << " " << img.height << "\n255\n";
  std::string h = header.str();
  std::vector<std::uint8_t> out(h.begin(), h.end());
  out.insert(out.end(), img.data.begin(), img.data.end());
  write_file(path, out.data(), out.size());
}

ImageBuffer read_image(const std::string& path) {
  auto probe = read_file(path);
  if (probe.size() >= 8 &&
      std::memcmp(probe.data(), kPngSignature.data(), 8) == 0)
    return read_png(path);
  if (probe.size() >= 2 && probe[0] == 'P') return read_pnm(path);
  throw IoError(path + ": unrecognized image format");
}

void write_image(const std::string& path, const ImageBuffer& img) {
  auto dot = path.find_last_of('.');
  std::string ext = (dot == std::string::npos) ? "" : path.substr(dot);
  if (ext == ".png") {
    write_png(path, img);
  } else if (ext == ".ppm" || ext == ".pgm") {
    write_pnm(path, img);
  } else {
    throw IoError(path + ": unsupported output extension");
  }
}

BinaryMask read_mask_pgm(const std::string& path) {
  ImageBuffer img = read_pnm(path);
  if (img.channels != 1) throw IoError(path + ": mask must be grayscale");
  BinaryMask m = BinaryMask::make(img.width, img.height);
  for (std::size_t i = 0; i < img.data.size(); ++i)
    m.bits[i] = img.data[i] >= 128 ? 1 : 0;
  return m;
}

void write_mask_pgm(const std::string& path, const BinaryMask& mask) {
  ImageBuffer img = ImageBuffer::make(mask.width, mask.height, 1);
  for (std::size_t i = 0; i < mask.bits.size(); ++i)
    img.data[i] = mask.bits[i] ? 255 : 0;
  write_pnm(path, img);
}

}  // namespace sentinel::img
