#include "lodct/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

#include "lodct/errors.hpp"

namespace lodct {

namespace {

constexpr char kMagic[4] = {'S', 'G', 'F', '1'};

// Payload element count limit; keeps rows*cols*sizeof(float) well inside
// size_t on 32-bit hosts too.
constexpr std::uint64_t kMaxElements = std::uint64_t{1} << 31;

void put_u32le(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint32_t get_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

Image2D::Image2D(int rows, int cols, double value) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("Image2D: dimensions must be positive, got " +
                                std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
  data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
               value);
}

Image2D Image2D::filled(int rows, int cols, double value) {
  return Image2D(rows, cols, value);
}

void save_raw(const std::filesystem::path& path, const Image2D& image) {
  std::string buf;
  buf.reserve(16 + image.size() * 4);
  buf.append(kMagic, 4);
  put_u32le(buf, static_cast<std::uint32_t>(image.rows()));
  put_u32le(buf, static_cast<std::uint32_t>(image.cols()));
  put_u32le(buf, 0);

  for (double v : image.data()) {
    const float f = static_cast<float>(v);
    if (!std::isfinite(f)) {
      throw NumericError("save_raw: value " + std::to_string(v) +
                         " is not representable as a finite float32");
    }
    put_u32le(buf, std::bit_cast<std::uint32_t>(f));
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("save_raw: cannot open " + path.string() + " for writing");
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) {
    throw IoError("save_raw: write failed for " + path.string());
  }
}

Image2D load_raw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("load_raw: cannot open " + path.string());
  }

  unsigned char header[16];
  in.read(reinterpret_cast<char*>(header), 16);
  if (in.gcount() != 16) {
    throw TruncatedFileError("load_raw: " + path.string() +
                             " is shorter than the 16-byte header");
  }
  if (std::memcmp(header, kMagic, 4) != 0) {
    throw BadMagicError("load_raw: " + path.string() +
                        " does not start with magic \"SGF1\"");
  }

  const std::uint32_t rows = get_u32le(header + 4);
  const std::uint32_t cols = get_u32le(header + 8);
  if (rows == 0 || cols == 0 ||
      static_cast<std::uint64_t>(rows) * cols > kMaxElements ||
      rows > static_cast<std::uint32_t>(std::numeric_limits<int>::max()) ||
      cols > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
    throw DimensionOverflowError("load_raw: " + path.string() +
                                 " declares unusable dimensions " +
                                 std::to_string(rows) + "x" +
                                 std::to_string(cols));
  }

  const std::size_t n = static_cast<std::size_t>(rows) * cols;
  std::vector<unsigned char> payload(n * 4);
  in.read(reinterpret_cast<char*>(payload.data()),
          static_cast<std::streamsize>(payload.size()));
  if (static_cast<std::size_t>(in.gcount()) != payload.size()) {
    throw TruncatedFileError(
        "load_raw: " + path.string() + " payload holds " +
        std::to_string(in.gcount() / 4) + " floats, header claims " +
        std::to_string(n));
  }

  Image2D image(static_cast<int>(rows), static_cast<int>(cols));
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint32_t bits = get_u32le(payload.data() + 4 * k);
    image.data()[k] = static_cast<double>(std::bit_cast<float>(bits));
  }
  return image;
}

void save_pgm(const std::filesystem::path& path, const Image2D& image,
              double window_min, double window_max) {
  if (!(window_max > window_min)) {
    throw std::invalid_argument("save_pgm: degenerate window [" +
                                std::to_string(window_min) + ", " +
                                std::to_string(window_max) + "]");
  }

  std::string buf = "P5\n" + std::to_string(image.cols()) + " " +
                    std::to_string(image.rows()) + "\n255\n";
  buf.reserve(buf.size() + image.size());

  const double scale = 255.0 / (window_max - window_min);
  for (double v : image.data()) {
    double t = (v - window_min) * scale;
    t = std::clamp(t, 0.0, 255.0);
    const int pixel = static_cast<int>(std::floor(t + 0.5));
    buf.push_back(static_cast<char>(std::min(pixel, 255)));
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("save_pgm: cannot open " + path.string() + " for writing");
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) {
    throw IoError("save_pgm: write failed for " + path.string());
  }
}

}  // namespace lodct
