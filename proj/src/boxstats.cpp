#include "lodct/boxstats.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace lodct {

BoxRadius::BoxRadius(int r) : r_(r) {
  if (r < 0) {
    throw std::invalid_argument("BoxRadius: radius must be non-negative, got " +
                                std::to_string(r));
  }
}

Image2D moving_sum_rows(const Image2D& image, BoxRadius radius) {
  const int rows = image.rows();
  const int cols = image.cols();
  const int r = radius.value();
  if (r == 0) return image;  // single-pixel windows, exact identity
  Image2D out(rows, cols);

  for (int i = 0; i < rows; ++i) {
    const double* in = image.data().data() +
                       static_cast<std::size_t>(i) * cols;
    double* o = out.data().data() + static_cast<std::size_t>(i) * cols;

    double sum = 0.0;
    const int head = std::min(r, cols - 1);
    for (int j = 0; j <= head; ++j) sum += in[j];
    o[0] = sum;

    for (int j = 1; j < cols; ++j) {
      const int enter = j + r;
      const int leave = j - r - 1;
      if (enter < cols) sum += in[enter];
      if (leave >= 0) sum -= in[leave];
      o[j] = sum;
    }
  }
  return out;
}

Image2D moving_sum_cols(const Image2D& image, BoxRadius radius) {
  const int rows = image.rows();
  const int cols = image.cols();
  const int r = radius.value();
  if (r == 0) return image;
  Image2D out(rows, cols);

  // One running sum per column, advanced a row at a time to stay row-major
  // friendly.
  std::vector<double> sum(static_cast<std::size_t>(cols), 0.0);
  const int head = std::min(r, rows - 1);
  for (int i = 0; i <= head; ++i) {
    const double* in = image.data().data() +
                       static_cast<std::size_t>(i) * cols;
    for (int j = 0; j < cols; ++j) sum[j] += in[j];
  }

  for (int i = 0; i < rows; ++i) {
    if (i > 0) {
      const int enter = i + r;
      const int leave = i - r - 1;
      if (enter < rows) {
        const double* in = image.data().data() +
                           static_cast<std::size_t>(enter) * cols;
        for (int j = 0; j < cols; ++j) sum[j] += in[j];
      }
      if (leave >= 0) {
        const double* in = image.data().data() +
                           static_cast<std::size_t>(leave) * cols;
        for (int j = 0; j < cols; ++j) sum[j] -= in[j];
      }
    }
    double* o = out.data().data() + static_cast<std::size_t>(i) * cols;
    for (int j = 0; j < cols; ++j) o[j] = sum[j];
  }
  return out;
}

Image2D box_sum(const Image2D& image, BoxRadius r) {
  return moving_sum_cols(moving_sum_rows(image, r), r);
}

Image2D box_count(int rows, int cols, BoxRadius r) {
  return box_sum(Image2D(rows, cols, 1.0), r);
}

Image2D box_mean(const Image2D& image, BoxRadius r) {
  Image2D sums = box_sum(image, r);
  const Image2D counts = box_count(image.rows(), image.cols(), r);
  for (std::size_t k = 0; k < sums.size(); ++k) {
    sums.data()[k] /= counts.data()[k];
  }
  return sums;
}

Image2D box_variance(const Image2D& image, BoxRadius r) {
  Image2D squared = image;
  for (double& v : squared.data()) v *= v;

  const Image2D sums = box_sum(image, r);
  Image2D out = box_sum(squared, r);
  const Image2D counts = box_count(image.rows(), image.cols(), r);

  for (std::size_t k = 0; k < out.size(); ++k) {
    const double n = counts.data()[k];
    const double mean = sums.data()[k] / n;
    out.data()[k] = std::max(0.0, out.data()[k] / n - mean * mean);
  }
  return out;
}

}  // namespace lodct
