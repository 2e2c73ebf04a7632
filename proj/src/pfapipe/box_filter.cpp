#include "pfapipe/box_filter.hpp"

#include <algorithm>

namespace pfapipe {

namespace {

// Horizontal window sums with index clamping, via row prefix sums plus
// explicit replication counts at the two edges.
void box_sum_rows(const Plane& src, int radius, Plane& dst) {
  const int w = src.width();
  std::vector<double> prefix(w + 1);
  for (int y = 0; y < src.height(); ++y) {
    const double* row = src.row(y);
    prefix[0] = 0.0;
    for (int x = 0; x < w; ++x) prefix[x + 1] = prefix[x] + row[x];
    double* out = dst.row(y);
    for (int x = 0; x < w; ++x) {
      int lo = x - radius, hi = x + radius;
      double sum = prefix[std::min(hi, w - 1) + 1] - prefix[std::max(lo, 0)];
      if (lo < 0) sum += static_cast<double>(-lo) * row[0];
      if (hi > w - 1) sum += static_cast<double>(hi - (w - 1)) * row[w - 1];
      out[x] = sum;
    }
  }
}

void box_sum_cols(const Plane& src, int radius, Plane& dst) {
  const int w = src.width();
  const int h = src.height();
  std::vector<double> prefix(static_cast<std::size_t>(h + 1) * w);
  std::fill(prefix.begin(), prefix.begin() + w, 0.0);
  for (int y = 0; y < h; ++y) {
    const double* row = src.row(y);
    const double* prev = prefix.data() + static_cast<std::size_t>(y) * w;
    double* cur = prefix.data() + static_cast<std::size_t>(y + 1) * w;
    for (int x = 0; x < w; ++x) cur[x] = prev[x] + row[x];
  }
  for (int y = 0; y < h; ++y) {
    int lo = y - radius, hi = y + radius;
    const double* top = prefix.data() + static_cast<std::size_t>(std::max(lo, 0)) * w;
    const double* bot = prefix.data() + static_cast<std::size_t>(std::min(hi, h - 1) + 1) * w;
    const double* first = src.row(0);
    const double* last = src.row(h - 1);
    double* out = dst.row(y);
    double top_rep = lo < 0 ? static_cast<double>(-lo) : 0.0;
    double bot_rep = hi > h - 1 ? static_cast<double>(hi - (h - 1)) : 0.0;
    for (int x = 0; x < w; ++x) {
      out[x] = bot[x] - top[x] + top_rep * first[x] + bot_rep * last[x];
    }
  }
}

enum class Border { replicate, zero };

Plane convolve_1d(const Plane& src, const std::vector<double>& kernel, bool horizontal,
                  Border border) {
  if (kernel.empty()) return src;
  if (kernel.size() % 2 == 0) {
    throw ContractError("convolve: kernel length must be odd");
  }
  const int r = static_cast<int>(kernel.size()) / 2;
  const int w = src.width();
  const int h = src.height();
  Plane dst(w, h);
  if (horizontal) {
    for (int y = 0; y < h; ++y) {
      const double* row = src.row(y);
      double* out = dst.row(y);
      for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int t = -r; t <= r; ++t) {
          int xi = x + t;
          double v;
          if (xi < 0 || xi >= w) {
            v = border == Border::replicate ? row[std::clamp(xi, 0, w - 1)] : 0.0;
          } else {
            v = row[xi];
          }
          acc += kernel[t + r] * v;
        }
        out[x] = acc;
      }
    }
  } else {
    for (int y = 0; y < h; ++y) {
      double* out = dst.row(y);
      for (int t = -r; t <= r; ++t) {
        int yi = y + t;
        const double* row;
        if (yi < 0 || yi >= h) {
          if (border == Border::zero) continue;
          row = src.row(std::clamp(yi, 0, h - 1));
        } else {
          row = src.row(yi);
        }
        double kv = kernel[t + r];
        for (int x = 0; x < w; ++x) out[x] += kv * row[x];
      }
    }
  }
  return dst;
}

}  // namespace

Plane box_sum_replicate(const Plane& p, int radius) {
  if (radius < 0) throw ContractError("box_sum: radius must be >= 0");
  Plane tmp(p.width(), p.height());
  box_sum_rows(p, radius, tmp);
  Plane out(p.width(), p.height());
  box_sum_cols(tmp, radius, out);
  return out;
}

Plane box_mean_replicate(const Plane& p, int radius) {
  Plane out = box_sum_replicate(p, radius);
  double inv = 1.0 / ((2.0 * radius + 1) * (2.0 * radius + 1));
  for (double& v : out.samples()) v *= inv;
  return out;
}

Plane convolve_separable_replicate(const Plane& p, const std::vector<double>& kernel_x,
                                   const std::vector<double>& kernel_y) {
  Plane tmp = convolve_1d(p, kernel_x, true, Border::replicate);
  return convolve_1d(tmp, kernel_y, false, Border::replicate);
}

Plane convolve_separable_zero(const Plane& p, const std::vector<double>& kernel_x,
                              const std::vector<double>& kernel_y) {
  Plane tmp = convolve_1d(p, kernel_x, true, Border::zero);
  return convolve_1d(tmp, kernel_y, false, Border::zero);
}

std::vector<double> triangle_kernel(int half_width) {
  if (half_width < 1) throw ContractError("triangle_kernel: half_width must be >= 1");
  std::vector<double> k(2 * half_width - 1);
  for (int i = 0; i < static_cast<int>(k.size()); ++i) {
    k[i] = 1.0 - std::abs(i - (half_width - 1)) / static_cast<double>(half_width);
  }
  return k;
}

}  // namespace pfapipe
