#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "lodct/errors.hpp"
#include "lodct/grid.hpp"
#include "lodct/noise.hpp"
#include "support/tempdir.hpp"

using namespace lodct;
using testsupport::TempDir;

namespace {

std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

// Grid of values that survive the float32 boundary exactly.
Image2D random_float_grid(int rows, int cols, std::uint64_t seed) {
  Image2D grid(rows, cols);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double u =
        static_cast<double>(counter_hash(seed, k) >> 11) * 0x1.0p-53;
    grid.data()[k] = static_cast<double>(static_cast<float>(2000.0 * u - 1000.0));
  }
  return grid;
}

}  // namespace

TEST_CASE("filled grids") {
  const Image2D single = Image2D::filled(1, 1, 0.0);
  CHECK(single.rows() == 1);
  CHECK(single.cols() == 1);
  CHECK(single(0, 0) == 0.0);

  const Image2D grid = Image2D::filled(2, 3, 1.5);
  CHECK(grid.size() == 6);
  for (double v : grid.data()) CHECK(v == 1.5);

  const Image2D canvas = Image2D::filled(256, 256, 0.0);
  CHECK(canvas.rows() == 256);
  CHECK(canvas.cols() == 256);

  CHECK_THROWS_AS(Image2D::filled(0, 4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Image2D::filled(4, -1, 0.0), std::invalid_argument);
}

TEST_CASE("raw round-trip is bit-exact") {
  TempDir dir("grid");

  Image2D grid(3, 3);
  for (int k = 0; k < 9; ++k) grid.data()[k] = 0.25 * (k + 1);
  const auto path = dir / "tiny.sgf";
  save_raw(path, grid);
  const Image2D back = load_raw(path);
  REQUIRE(back.same_shape(grid));
  for (int k = 0; k < 9; ++k) CHECK(back.data()[k] == grid.data()[k]);

  // Arbitrary float-valued grids round-trip exactly; re-saving reproduces the
  // same bytes.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int rows = 1 + static_cast<int>(counter_hash(seed, 100) % 12);
    const int cols = 1 + static_cast<int>(counter_hash(seed, 101) % 12);
    const Image2D original = random_float_grid(rows, cols, seed);
    save_raw(path, original);
    const Image2D loaded = load_raw(path);
    REQUIRE(loaded.same_shape(original));
    for (std::size_t k = 0; k < original.size(); ++k) {
      CHECK(loaded.data()[k] == original.data()[k]);
    }
    const std::string bytes = read_bytes(path);
    save_raw(path, loaded);
    CHECK(read_bytes(path) == bytes);
  }
}

TEST_CASE("raw header layout") {
  TempDir dir("gridhdr");
  const auto path = dir / "one.sgf";
  save_raw(path, Image2D::filled(2, 5, 0.0));
  const std::string bytes = read_bytes(path);
  REQUIRE(bytes.size() == 16 + 2 * 5 * 4);
  CHECK(bytes.substr(0, 4) == "SGF1");
  CHECK(static_cast<unsigned char>(bytes[4]) == 2);   // rows, little-endian
  CHECK(static_cast<unsigned char>(bytes[8]) == 5);   // cols
  for (int k = 12; k < 16; ++k) CHECK(bytes[k] == 0);  // reserved
}

TEST_CASE("raw load failure modes are distinct") {
  TempDir dir("gridbad");
  const auto good = dir / "good.sgf";
  save_raw(good, Image2D::filled(10, 10, 1.0));
  std::string bytes = read_bytes(good);

  SUBCASE("bad magic") {
    std::string bad = bytes;
    bad.replace(0, 4, "XXXX");
    const auto path = dir / "magic.sgf";
    write_bytes(path, bad);
    CHECK_THROWS_AS(load_raw(path), BadMagicError);
  }
  SUBCASE("truncated payload") {
    // Header claims 10x10 but only 50 floats follow.
    const auto path = dir / "short.sgf";
    write_bytes(path, bytes.substr(0, 16 + 50 * 4));
    CHECK_THROWS_AS(load_raw(path), TruncatedFileError);
  }
  SUBCASE("truncated header") {
    const auto path = dir / "stub.sgf";
    write_bytes(path, bytes.substr(0, 7));
    CHECK_THROWS_AS(load_raw(path), TruncatedFileError);
  }
  SUBCASE("dimension overflow") {
    std::string bad = bytes;
    for (int k = 4; k < 12; ++k) bad[k] = static_cast<char>(0xff);
    const auto path = dir / "huge.sgf";
    write_bytes(path, bad);
    CHECK_THROWS_AS(load_raw(path), DimensionOverflowError);
  }
  SUBCASE("zero dimension") {
    std::string bad = bytes;
    bad[4] = bad[5] = bad[6] = bad[7] = 0;
    const auto path = dir / "zero.sgf";
    write_bytes(path, bad);
    CHECK_THROWS_AS(load_raw(path), DimensionOverflowError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_raw(dir / "nonexistent.sgf"), IoError);
  }
}

TEST_CASE("pgm windowing") {
  TempDir dir("pgm");
  const auto path = dir / "img.pgm";

  SUBCASE("lower clamp") {
    save_pgm(path, Image2D::filled(4, 4, -1.0), -1.0, 1.0);
    const std::string bytes = read_bytes(path);
    const std::string header = "P5\n4 4\n255\n";
    REQUIRE(bytes.size() == header.size() + 16);
    CHECK(bytes.substr(0, header.size()) == header);
    for (std::size_t k = header.size(); k < bytes.size(); ++k) {
      CHECK(static_cast<unsigned char>(bytes[k]) == 0);
    }
  }
  SUBCASE("upper clamp") {
    save_pgm(path, Image2D::filled(4, 4, 5.0), -1.0, 1.0);
    const std::string bytes = read_bytes(path);
    for (std::size_t k = bytes.size() - 16; k < bytes.size(); ++k) {
      CHECK(static_cast<unsigned char>(bytes[k]) == 255);
    }
  }
  SUBCASE("midpoint rounds half up") {
    save_pgm(path, Image2D::filled(1, 1, 0.5), 0.0, 1.0);
    const std::string bytes = read_bytes(path);
    CHECK(static_cast<unsigned char>(bytes.back()) == 128);
  }
  SUBCASE("degenerate window rejected") {
    CHECK_THROWS_AS(save_pgm(path, Image2D::filled(2, 2, 0.0), 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(save_pgm(path, Image2D::filled(2, 2, 0.0), 2.0, 1.0),
                    std::invalid_argument);
  }
}
