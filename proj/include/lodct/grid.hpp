#ifndef LODCT_GRID_HPP
#define LODCT_GRID_HPP

#include <cstddef>
#include <filesystem>
#include <vector>

namespace lodct {

/// Dense 2D array of doubles, row-major. Serves both attenuation images and
/// sinograms; for sinograms the row index is the detector bin and the column
/// index is the view angle.
class Image2D {
public:
  Image2D() = default;
  Image2D(int rows, int cols, double value = 0.0);

  static Image2D filled(int rows, int cols, double value);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double operator()(int r, int c) const { return data_[index(r, c)]; }
  double& operator()(int r, int c) { return data_[index(r, c)]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool same_shape(const Image2D& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// SGF1 raw format: 16-byte header (magic "SGF1", u32le rows, u32le cols,
/// 4 reserved zero bytes) followed by rows*cols little-endian float32,
/// row-major.
void save_raw(const std::filesystem::path& path, const Image2D& image);
Image2D load_raw(const std::filesystem::path& path);

/// Binary 8-bit PGM (P5). Values are mapped linearly from
/// [window_min, window_max] to [0, 255] and clamped; ties round half up.
void save_pgm(const std::filesystem::path& path, const Image2D& image,
              double window_min, double window_max);

}  // namespace lodct

#endif
