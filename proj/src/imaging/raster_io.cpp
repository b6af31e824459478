#include "forge/imaging/raster_io.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include <jpeglib.h>
#include <png.h>

#include "forge/core/error.hpp"

namespace forge {
namespace {

using FilePtr = std::unique_ptr<FILE, int (*)(FILE*)>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode), &std::fclose);
  if (!f) throw Error(ErrorKind::Io, std::string("cannot open ") + path.string());
  return f;
}

[[noreturn]] void png_fail(png_structp, png_const_charp message) {
  throw Error(ErrorKind::Io, std::string("libpng: ") + message);
}
void png_warn(png_structp, png_const_charp) {}

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;
  PngReader() {
    png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_fail, png_warn);
    if (!png) throw Error(ErrorKind::Io, "png_create_read_struct failed");
    info = png_create_info_struct(png);
  }
  ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;
  PngWriter() {
    png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_fail, png_warn);
    if (!png) throw Error(ErrorKind::Io, "png_create_write_struct failed");
    info = png_create_info_struct(png);
  }
  ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

bool has_png_signature(FILE* f) {
  unsigned char sig[8] = {};
  const std::size_t n = std::fread(sig, 1, 8, f);
  std::rewind(f);
  return n == 8 && png_sig_cmp(sig, 0, 8) == 0;
}

Image read_png_rgb(FILE* f, const std::filesystem::path& path) {
  PngReader r;
  png_init_io(r.png, f);
  png_read_info(r.png, r.info);
  const int color = png_get_color_type(r.png, r.info);
  const int depth = png_get_bit_depth(r.png, r.info);
  if (depth == 16) png_set_strip_16(r.png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(r.png);
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(r.png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(r.png);
  png_read_update_info(r.png, r.info);
  const int width = static_cast<int>(png_get_image_width(r.png, r.info));
  const int height = static_cast<int>(png_get_image_height(r.png, r.info));
  if (png_get_rowbytes(r.png, r.info) != static_cast<std::size_t>(width) * 3) {
    throw Error(ErrorKind::Io, "unsupported PNG layout in " + path.string());
  }
  Image image(width, height);
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) rows[static_cast<std::size_t>(y)] = image.pixel(0, y);
  png_read_image(r.png, rows.data());
  png_read_end(r.png, nullptr);
  return image;
}

struct JpegError {
  jpeg_error_mgr mgr;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_fail(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegError*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

Image read_jpeg_rgb(FILE* f, const std::filesystem::path& path) {
  jpeg_decompress_struct cinfo{};
  JpegError err{};
  cinfo.err = jpeg_std_error(&err.mgr);
  err.mgr.error_exit = jpeg_fail;
  // Nothing with a destructor may live across the setjmp below.
  Image* result = nullptr;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    delete result;
    throw Error(ErrorKind::Io, "libjpeg: " + std::string(err.message) + " in " + path.string());
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, f);
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  result = new Image(static_cast<int>(cinfo.output_width), static_cast<int>(cinfo.output_height));
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = result->pixel(0, static_cast<int>(cinfo.output_scanline));
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  Image image = std::move(*result);
  delete result;
  return image;
}

struct NpyArray {
  std::vector<std::size_t> shape;
  std::vector<double> data;
};

NpyArray read_npy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  char magic[6];
  in.read(magic, 6);
  if (!in || std::memcmp(magic, "\x93NUMPY", 6) != 0) throw Error(ErrorKind::Io, "not an npy file: " + path.string());
  unsigned char version[2];
  in.read(reinterpret_cast<char*>(version), 2);
  std::size_t header_len = 0;
  if (version[0] == 1) {
    unsigned char len[2];
    in.read(reinterpret_cast<char*>(len), 2);
    header_len = len[0] | (static_cast<std::size_t>(len[1]) << 8);
  } else {
    unsigned char len[4];
    in.read(reinterpret_cast<char*>(len), 4);
    header_len = len[0] | (static_cast<std::size_t>(len[1]) << 8) | (static_cast<std::size_t>(len[2]) << 16) |
                 (static_cast<std::size_t>(len[3]) << 24);
  }
  std::string header(header_len, '\0');
  in.read(header.data(), static_cast<std::streamsize>(header_len));
  if (!in) throw Error(ErrorKind::Io, "truncated npy header: " + path.string());

  auto field = [&](const std::string& key) {
    const auto pos = header.find("'" + key + "'");
    if (pos == std::string::npos) throw Error(ErrorKind::Io, "npy header lacks " + key + ": " + path.string());
    return header.substr(header.find(':', pos) + 1);
  };
  const std::string descr_field = field("descr");
  const auto q0 = descr_field.find('\'');
  const std::string descr = descr_field.substr(q0 + 1, descr_field.find('\'', q0 + 1) - q0 - 1);
  if (field("fortran_order").find("True") < field("fortran_order").find(',')) {
    throw Error(ErrorKind::Io, "fortran-ordered npy not supported: " + path.string());
  }
  const std::string shape_field = field("shape");
  const std::string shape_text = shape_field.substr(shape_field.find('(') + 1, shape_field.find(')') - shape_field.find('(') - 1);
  NpyArray array;
  std::size_t count = 1;
  for (std::size_t pos = 0; pos < shape_text.size();) {
    const std::size_t comma = shape_text.find(',', pos);
    const std::string token = shape_text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (token.find_first_of("0123456789") != std::string::npos) {
      array.shape.push_back(std::stoul(token));
      count *= array.shape.back();
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }

  if (descr.size() < 3 || descr[0] == '>') throw Error(ErrorKind::Io, "unsupported npy dtype " + descr);
  const char kind = descr[1];
  const int size = std::stoi(descr.substr(2));
  std::vector<char> raw(count * static_cast<std::size_t>(size));
  in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (!in) throw Error(ErrorKind::Io, "truncated npy data: " + path.string());
  array.data.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const char* p = raw.data() + i * static_cast<std::size_t>(size);
    double v = 0.0;
    if (kind == 'f' && size == 4) {
      float f;
      std::memcpy(&f, p, 4);
      v = f;
    } else if (kind == 'f' && size == 8) {
      std::memcpy(&v, p, 8);
    } else if (kind == 'u' || kind == 'b') {
      std::uint64_t u = 0;
      std::memcpy(&u, p, static_cast<std::size_t>(size));
      v = static_cast<double>(u);
    } else if (kind == 'i') {
      std::int64_t s = 0;
      std::memcpy(&s, p, static_cast<std::size_t>(size));
      if (size < 8 && (s >> (size * 8 - 1)) & 1) s -= std::int64_t{1} << (size * 8);
      v = static_cast<double>(s);
    } else {
      throw Error(ErrorKind::Io, "unsupported npy dtype " + descr);
    }
    array.data[i] = v;
  }
  return array;
}

std::pair<int, int> npy_extent(const NpyArray& a, const std::filesystem::path& path) {
  if (a.shape.size() == 2 || (a.shape.size() == 3 && a.shape[2] == 1)) {
    return {static_cast<int>(a.shape[1]), static_cast<int>(a.shape[0])};
  }
  throw Error(ErrorKind::Io, "depth npy must be (H,W) or (H,W,1): " + path.string());
}

}  // namespace

Image read_image(const std::filesystem::path& path) {
  FilePtr f = open_file(path, "rb");
  return has_png_signature(f.get()) ? read_png_rgb(f.get(), path) : read_jpeg_rgb(f.get(), path);
}

void write_png(const std::filesystem::path& path, const Image& image, int compression) {
  FilePtr f = open_file(path, "wb");
  PngWriter w;
  png_init_io(w.png, f.get());
  png_set_compression_level(w.png, compression);
  // Adaptive filter search costs more than the deflate pass at low levels.
  if (compression <= 3) png_set_filter(w.png, PNG_FILTER_TYPE_BASE, PNG_FILTER_SUB);
  png_set_IHDR(w.png, w.info, static_cast<png_uint_32>(image.width()), static_cast<png_uint_32>(image.height()), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(w.png, w.info);
  for (int y = 0; y < image.height(); ++y) {
    png_write_row(w.png, const_cast<png_bytep>(image.pixel(0, y)));
  }
  png_write_end(w.png, nullptr);
}

void write_depth_png16(const std::filesystem::path& path, int width, int height,
                       const std::vector<std::uint16_t>& values) {
  FilePtr f = open_file(path, "wb");
  PngWriter w;
  png_init_io(w.png, f.get());
  png_set_IHDR(w.png, w.info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 16,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(w.png, w.info);
  std::vector<std::uint8_t> row(static_cast<std::size_t>(width) * 2);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::uint16_t v = values[static_cast<std::size_t>(y) * width + x];
      row[static_cast<std::size_t>(x) * 2] = static_cast<std::uint8_t>(v >> 8);  // PNG is big-endian
      row[static_cast<std::size_t>(x) * 2 + 1] = static_cast<std::uint8_t>(v & 0xFF);
    }
    png_write_row(w.png, row.data());
  }
  png_write_end(w.png, nullptr);
}

void write_npy_f32(const std::filesystem::path& path, int width, int height, const std::vector<float>& values) {
  std::string header = "{'descr': '<f4', 'fortran_order': False, 'shape': (" + std::to_string(height) + ", " +
                       std::to_string(width) + "), }";
  const std::size_t total = 10 + header.size() + 1;
  header.append((64 - total % 64) % 64, ' ');
  header.push_back('\n');
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out.write("\x93NUMPY\x01\x00", 8);
  const std::uint16_t len = static_cast<std::uint16_t>(header.size());
  const char len_bytes[2] = {static_cast<char>(len & 0xFF), static_cast<char>(len >> 8)};
  out.write(len_bytes, 2);
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(float)));
}

RawDepth read_depth(const std::filesystem::path& path, const std::filesystem::path& mask_path) {
  RawDepth raw;
  if (path.extension() == ".npy") {
    const NpyArray depth = read_npy(path);
    std::tie(raw.width, raw.height) = npy_extent(depth, path);
    raw.values.assign(depth.data.begin(), depth.data.end());
    raw.valid.assign(raw.values.size(), 1);
    if (!mask_path.empty()) {
      const NpyArray mask = read_npy(mask_path);
      if (npy_extent(mask, mask_path) != std::pair{raw.width, raw.height}) {
        throw Error(ErrorKind::Io, "depth mask shape mismatch: " + mask_path.string());
      }
      for (std::size_t i = 0; i < raw.valid.size(); ++i) raw.valid[i] = mask.data[i] != 0.0 ? 1 : 0;
    }
    return raw;
  }

  FilePtr f = open_file(path, "rb");
  PngReader r;
  png_init_io(r.png, f.get());
  png_read_info(r.png, r.info);
  if (png_get_color_type(r.png, r.info) != PNG_COLOR_TYPE_GRAY || png_get_bit_depth(r.png, r.info) != 16) {
    throw Error(ErrorKind::Io, "depth PNG must be 16-bit grayscale: " + path.string());
  }
  raw.width = static_cast<int>(png_get_image_width(r.png, r.info));
  raw.height = static_cast<int>(png_get_image_height(r.png, r.info));
  std::vector<std::uint8_t> row(static_cast<std::size_t>(raw.width) * 2);
  raw.values.resize(static_cast<std::size_t>(raw.width) * raw.height);
  raw.valid.resize(raw.values.size());
  for (int y = 0; y < raw.height; ++y) {
    png_read_row(r.png, row.data(), nullptr);
    for (int x = 0; x < raw.width; ++x) {
      const std::uint16_t v = static_cast<std::uint16_t>((row[static_cast<std::size_t>(x) * 2] << 8) |
                                                         row[static_cast<std::size_t>(x) * 2 + 1]);
      const std::size_t i = static_cast<std::size_t>(y) * raw.width + x;
      raw.values[i] = static_cast<float>(v);
      raw.valid[i] = v != 0 ? 1 : 0;
    }
  }
  png_read_end(r.png, nullptr);
  return raw;
}

}  // namespace forge
