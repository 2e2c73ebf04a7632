#include "pfapipe/bm3d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "pfapipe/threading.hpp"

namespace pfapipe {

namespace {

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

int floor_pow2(int v) {
  int p = 1;
  while (p * 2 <= v) p *= 2;
  return p;
}

// Pairwise summation. For a power-of-two count of identical values both the
// sum and the mean are exact, which makes constant blocks round-trip
// bit-exactly through the 3-D transform.
double pairwise_sum(double* scratch, int count) {
  while (count > 1) {
    int half = count / 2;
    for (int i = 0; i < half; ++i) scratch[i] = scratch[2 * i] + scratch[2 * i + 1];
    if (count & 1) scratch[half] = scratch[count - 1];
    count = half + (count & 1);
  }
  return scratch[0];
}

double bessel_i0(double x) {
  double sum = 1.0, term = 1.0;
  double half_sq = x * x / 4.0;
  for (int k = 1; k < 40; ++k) {
    term *= half_sq / (k * k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

std::vector<double> kaiser_window_2d(int n, double beta) {
  std::vector<double> k1(n, 1.0);
  if (n > 1) {
    double denom = bessel_i0(beta);
    for (int i = 0; i < n; ++i) {
      double t = 2.0 * i / (n - 1.0) - 1.0;
      k1[i] = bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - t * t))) / denom;
    }
  }
  std::vector<double> k2(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) k2[i * n + j] = k1[i] * k1[j];
  }
  return k2;
}

// Orthonormal DCT-II applied as explicit matrix products.
class Dct2d {
public:
  explicit Dct2d(int n) : n_(n), mat_(static_cast<std::size_t>(n) * n) {
    for (int k = 0; k < n; ++k) {
      double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
      for (int j = 0; j < n; ++j) {
        mat_[k * n + j] = scale * std::cos(std::numbers::pi * (2 * j + 1) * k / (2.0 * n));
      }
    }
  }

  // out = D * in * D^T
  void forward(const double* in, double* out, double* tmp) const {
    multiply(mat_.data(), in, tmp, false);
    multiply_rt(tmp, mat_.data(), out, false);
  }

  // out = D^T * in * D
  void inverse(const double* in, double* out, double* tmp) const {
    multiply(mat_.data(), in, tmp, true);
    multiply_rt(tmp, mat_.data(), out, true);
  }

private:
  // tmp = M * in (or M^T * in when transposed)
  void multiply(const double* m, const double* in, double* tmp, bool transposed) const {
    for (int k = 0; k < n_; ++k) {
      for (int j = 0; j < n_; ++j) tmp[k * n_ + j] = 0.0;
      for (int i = 0; i < n_; ++i) {
        double mv = transposed ? m[i * n_ + k] : m[k * n_ + i];
        const double* src = in + i * n_;
        double* dst = tmp + k * n_;
        for (int j = 0; j < n_; ++j) dst[j] += mv * src[j];
      }
    }
  }
  // out = tmp * M^T (or tmp * M when transposed)
  void multiply_rt(const double* tmp, const double* m, double* out, bool transposed) const {
    for (int i = 0; i < n_; ++i) {
      const double* src = tmp + i * n_;
      double* dst = out + i * n_;
      for (int k = 0; k < n_; ++k) {
        double acc = 0.0;
        for (int j = 0; j < n_; ++j) {
          acc += src[j] * (transposed ? m[j * n_ + k] : m[k * n_ + j]);
        }
        dst[k] = acc;
      }
    }
  }

  int n_;
  std::vector<double> mat_;
};

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Full multilevel orthonormal Haar, scaling coefficients packed to the front.
void haar_forward(double* v, int count, double* tmp) {
  for (int len = count; len > 1; len /= 2) {
    int half = len / 2;
    for (int i = 0; i < half; ++i) {
      tmp[i] = (v[2 * i] + v[2 * i + 1]) * kInvSqrt2;
      tmp[half + i] = (v[2 * i] - v[2 * i + 1]) * kInvSqrt2;
    }
    std::copy(tmp, tmp + len, v);
  }
}

void haar_inverse(double* v, int count, double* tmp) {
  for (int len = 2; len <= count; len *= 2) {
    int half = len / 2;
    for (int i = 0; i < half; ++i) {
      tmp[2 * i] = (v[i] + v[half + i]) * kInvSqrt2;
      tmp[2 * i + 1] = (v[i] - v[half + i]) * kInvSqrt2;
    }
    std::copy(tmp, tmp + len, v);
  }
}

struct Grid {
  std::vector<int> ys, xs;
};

std::vector<int> grid_axis(int extent, int n, int step) {
  std::vector<int> out;
  int last = extent - n;
  for (int v = 0; v < last; v += step) out.push_back(v);
  out.push_back(last);
  return out;
}

struct Candidate {
  double d;
  std::int16_t dy, dx;
};

// Ties on distance prefer spatially closer blocks. This keeps the reference
// block itself (distance 0, offset 0) in every group, which guarantees the
// aggregation covers all pixels even on flat images where every distance ties.
bool cand_less(const Candidate& a, const Candidate& b) {
  if (a.d != b.d) return a.d < b.d;
  int ra = a.dy * a.dy + a.dx * a.dx;
  int rb = b.dy * b.dy + b.dx * b.dx;
  if (ra != rb) return ra < rb;
  if (a.dy != b.dy) return a.dy < b.dy;
  return a.dx < b.dx;
}

// Bounded best-list per reference block. The kept set is the minimum of a
// strict total order, so it is independent of insertion order.
class CandidateLists {
public:
  CandidateLists(int refs, int capacity)
      : capacity_(capacity),
        counts_(refs, 0),
        store_(static_cast<std::size_t>(refs) * capacity) {}

  void push(int ref, double d, int dy, int dx) {
    Candidate c{d, static_cast<std::int16_t>(dy), static_cast<std::int16_t>(dx)};
    Candidate* list = store_.data() + static_cast<std::size_t>(ref) * capacity_;
    int& count = counts_[ref];
    if (count < capacity_) {
      list[count++] = c;
      return;
    }
    int worst = 0;
    for (int i = 1; i < capacity_; ++i) {
      if (cand_less(list[worst], list[i])) worst = i;
    }
    if (cand_less(c, list[worst])) list[worst] = c;
  }

  // Sorts ascending and truncates to a power of two; returns the group size.
  int finalize(int ref, int max_blocks) {
    Candidate* list = store_.data() + static_cast<std::size_t>(ref) * capacity_;
    int& count = counts_[ref];
    std::sort(list, list + count, cand_less);
    count = floor_pow2(std::min(count, max_blocks));
    return count;
  }

  const Candidate* list(int ref) const {
    return store_.data() + static_cast<std::size_t>(ref) * capacity_;
  }

private:
  int capacity_;
  std::vector<int> counts_;
  std::vector<Candidate> store_;
};

// Block matching for references in grid rows [row_begin, row_end) of `img`.
// Distances are per-pixel mean squared differences; candidates beyond tau are
// rejected. Horizontal block sums are cached per image row in a ring buffer
// keyed by y % n, valid within one (dy,dx) offset.
void match_rows(const Plane& img, const Grid& grid, int row_begin, int row_end,
                int n, int radius, double tau, CandidateLists& cands) {
  const int w = img.width();
  const int h = img.height();
  const int nx = static_cast<int>(grid.xs.size());
  const double inv_nn = 1.0 / (static_cast<double>(n) * n);

  for (int r = row_begin; r < row_end; ++r) {
    for (int c = 0; c < nx; ++c) {
      cands.push((r - row_begin) * nx + c, 0.0, 0, 0);
    }
  }

  std::vector<double> rowsum(static_cast<std::size_t>(n) * w);
  std::vector<int> ring_row(n);
  std::vector<double> diffrow(w + 1);

  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      if (dy == 0 && dx == 0) continue;
      int ry_lo = std::max(0, -dy);
      int ry_hi = std::min(h - n, h - n - dy);
      int x0 = std::max(0, -dx);
      int x1 = std::min(w - n, w - n - dx);
      if (x0 > x1 || ry_lo > ry_hi) continue;

      std::fill(ring_row.begin(), ring_row.end(), -1);
      for (int r = row_begin; r < row_end; ++r) {
        int ry = grid.ys[r];
        if (ry < ry_lo) continue;
        if (ry > ry_hi) break;

        for (int y = ry; y < ry + n; ++y) {
          int slot = y % n;
          if (ring_row[slot] == y) continue;
          ring_row[slot] = y;
          const double* a = img.row(y);
          const double* b = img.row(y + dy) + dx;
          for (int x = x0; x < x1 + n; ++x) {
            double e = a[x] - b[x];
            diffrow[x] = e * e;
          }
          double* rs = rowsum.data() + static_cast<std::size_t>(slot) * w;
          double acc = 0.0;
          for (int j = 0; j < n; ++j) acc += diffrow[x0 + j];
          rs[x0] = acc;
          for (int x = x0 + 1; x <= x1; ++x) {
            acc += diffrow[x + n - 1] - diffrow[x - 1];
            rs[x] = acc;
          }
        }

        int ref = (r - row_begin) * nx;
        for (int c = 0; c < nx; ++c) {
          int rx = grid.xs[c];
          if (rx < x0 || rx > x1) continue;
          double d = 0.0;
          for (int i = 0; i < n; ++i) {
            d += rowsum[static_cast<std::size_t>((ry + i) % n) * w + rx];
          }
          d *= inv_nn;
          if (d <= tau) cands.push(ref + c, d, dy, dx);
        }
      }
    }
  }
}

// 3-D spectrum of one block group: per block, the exact mean is separated and
// the mean-removed block DCT'd; the group dimension is a full Haar transform
// per spatial coefficient plus a mean-separated transform of the block means.
// The protected 3-D DC is `mbar`.
struct GroupSpectrum {
  std::vector<double> spec;  // K * n*n, Haar'd across the group
  std::vector<double> dm;    // K, Haar'd deviations of block means
  double mbar = 0.0;

  void resize(int max_k, int nn) {
    spec.resize(static_cast<std::size_t>(max_k) * nn);
    dm.resize(max_k);
  }
};

struct Scratch {
  std::vector<double> a, b, means;
  void resize(int max_k, int nn) {
    int m = std::max(max_k, nn);
    a.resize(m);
    b.resize(m);
    means.resize(max_k);
  }
};

void forward_group(const double* blocks, int k_count, int n, const Dct2d& dct,
                   GroupSpectrum& out, Scratch& s) {
  const int nn = n * n;
  for (int k = 0; k < k_count; ++k) {
    const double* blk = blocks + static_cast<std::size_t>(k) * nn;
    std::copy(blk, blk + nn, s.a.data());
    double mean = pairwise_sum(s.a.data(), nn) / nn;
    s.means[k] = mean;
    for (int i = 0; i < nn; ++i) s.a[i] = blk[i] - mean;
    dct.forward(s.a.data(), out.spec.data() + static_cast<std::size_t>(k) * nn, s.b.data());
  }
  for (int c = 0; c < nn; ++c) {
    for (int k = 0; k < k_count; ++k) s.a[k] = out.spec[static_cast<std::size_t>(k) * nn + c];
    haar_forward(s.a.data(), k_count, s.b.data());
    for (int k = 0; k < k_count; ++k) out.spec[static_cast<std::size_t>(k) * nn + c] = s.a[k];
  }
  std::copy(s.means.begin(), s.means.begin() + k_count, s.a.data());
  out.mbar = pairwise_sum(s.a.data(), k_count) / k_count;
  for (int k = 0; k < k_count; ++k) out.dm[k] = s.means[k] - out.mbar;
  haar_forward(out.dm.data(), k_count, s.b.data());
}

// Inverts the group spectrum into per-block estimates (overwrites `blocks`).
void inverse_group(GroupSpectrum& g, int k_count, int n, const Dct2d& dct,
                   double* blocks, Scratch& s) {
  const int nn = n * n;
  for (int c = 0; c < nn; ++c) {
    for (int k = 0; k < k_count; ++k) s.a[k] = g.spec[static_cast<std::size_t>(k) * nn + c];
    haar_inverse(s.a.data(), k_count, s.b.data());
    for (int k = 0; k < k_count; ++k) g.spec[static_cast<std::size_t>(k) * nn + c] = s.a[k];
  }
  haar_inverse(g.dm.data(), k_count, s.b.data());
  for (int k = 0; k < k_count; ++k) {
    double* blk = blocks + static_cast<std::size_t>(k) * nn;
    dct.inverse(g.spec.data() + static_cast<std::size_t>(k) * nn, s.a.data(), s.b.data());
    double mean = g.mbar + g.dm[k];
    for (int i = 0; i < nn; ++i) blk[i] = s.a[i] + mean;
  }
}

void gather_blocks(const Plane& img, const Candidate* cands, int k_count,
                   int ry, int rx, int n, double* blocks) {
  for (int k = 0; k < k_count; ++k) {
    int by = ry + cands[k].dy;
    int bx = rx + cands[k].dx;
    for (int i = 0; i < n; ++i) {
      const double* src = img.row(by + i) + bx;
      std::copy(src, src + n, blocks + (static_cast<std::size_t>(k) * n + i) * n);
    }
  }
}

// One BM3D stage over the whole image. `basic == nullptr` selects the
// hard-thresholding stage (matching on `noisy`); otherwise the Wiener stage
// (matching and shrinkage spectrum from `basic`). Estimates are aggregated in
// the residual domain so pixels untouched by shrinkage stay bit-identical.
void bm3d_stage(const Plane& noisy, const Plane* basic, double sigma,
                const Bm3dParams& p, Plane& out) {
  const int w = noisy.width();
  const int h = noisy.height();
  const int n = std::max(1, std::min({p.block_size, w, h}));
  const int nn = n * n;
  const int max_k = basic ? p.max_blocks_stage2 : p.max_blocks_stage1;
  const double tau = basic ? p.tau_match_stage2 : p.tau_match_stage1;
  const Plane& match_src = basic ? *basic : noisy;

  Grid grid{grid_axis(h, n, p.step), grid_axis(w, n, p.step)};
  const int nx = static_cast<int>(grid.xs.size());
  const int ny = static_cast<int>(grid.ys.size());

  const Dct2d dct(n);
  const std::vector<double> kaiser = kaiser_window_2d(n, p.kaiser_beta);
  const double sigma2 = sigma * sigma;
  const double thr_spec = p.lambda_hard * sigma;
  const double thr_mean = p.lambda_hard * sigma / n;
  const double sigma_mean2 = sigma2 / (static_cast<double>(n) * n);

  // Fixed chunk count keeps the aggregation order independent of the thread
  // budget; chunk buffers are reduced in chunk order below.
  const int chunks = std::min(ny, 8);
  std::vector<std::vector<double>> nums(chunks), dens(chunks);

  parallel_chunks(ny, chunks, [&](int chunk, int row_begin, int row_end) {
    auto& num = nums[chunk];
    auto& den = dens[chunk];
    num.assign(static_cast<std::size_t>(w) * h, 0.0);
    den.assign(static_cast<std::size_t>(w) * h, 0.0);

    CandidateLists cands((row_end - row_begin) * nx, max_k);
    match_rows(match_src, grid, row_begin, row_end, n, p.search_radius, tau, cands);

    GroupSpectrum g_data, g_guide;
    Scratch scratch;
    g_data.resize(max_k, nn);
    g_guide.resize(max_k, nn);
    scratch.resize(max_k, nn);
    std::vector<double> blocks(static_cast<std::size_t>(max_k) * nn);
    std::vector<double> guide_blocks(static_cast<std::size_t>(max_k) * nn);

    for (int r = row_begin; r < row_end; ++r) {
      int ry = grid.ys[r];
      for (int c = 0; c < nx; ++c) {
        int rx = grid.xs[c];
        int ref = (r - row_begin) * nx + c;
        int k_count = cands.finalize(ref, max_k);
        const Candidate* list = cands.list(ref);

        gather_blocks(noisy, list, k_count, ry, rx, n, blocks.data());
        forward_group(blocks.data(), k_count, n, dct, g_data, scratch);

        double weight;
        if (!basic) {
          int retained = 1;
          for (int i = 0; i < k_count * nn; ++i) {
            if (std::abs(g_data.spec[i]) < thr_spec) {
              g_data.spec[i] = 0.0;
            } else {
              ++retained;
            }
          }
          for (int k = 0; k < k_count; ++k) {
            if (std::abs(g_data.dm[k]) < thr_mean) {
              g_data.dm[k] = 0.0;
            } else {
              ++retained;
            }
          }
          weight = 1.0 / (sigma2 * retained);
        } else {
          gather_blocks(*basic, list, k_count, ry, rx, n, guide_blocks.data());
          forward_group(guide_blocks.data(), k_count, n, dct, g_guide, scratch);
          double sum_w2 = 1.0;
          for (int i = 0; i < k_count * nn; ++i) {
            double b2 = g_guide.spec[i] * g_guide.spec[i];
            double wien = b2 / (b2 + sigma2);
            g_data.spec[i] *= wien;
            sum_w2 += wien * wien;
          }
          for (int k = 0; k < k_count; ++k) {
            double b2 = g_guide.dm[k] * g_guide.dm[k];
            double wien = b2 / (b2 + sigma_mean2);
            g_data.dm[k] *= wien;
            sum_w2 += wien * wien;
          }
          weight = 1.0 / (sigma2 * sum_w2);
        }

        inverse_group(g_data, k_count, n, dct, blocks.data(), scratch);

        for (int k = 0; k < k_count; ++k) {
          int by = ry + list[k].dy;
          int bx = rx + list[k].dx;
          const double* est = blocks.data() + static_cast<std::size_t>(k) * nn;
          for (int i = 0; i < n; ++i) {
            const double* src = noisy.row(by + i) + bx;
            double* nrow = num.data() + static_cast<std::size_t>(by + i) * w + bx;
            double* drow = den.data() + static_cast<std::size_t>(by + i) * w + bx;
            const double* kw = kaiser.data() + static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) {
              double wk = weight * kw[j];
              nrow[j] += wk * (est[i * n + j] - src[j]);
              drow[j] += wk;
            }
          }
        }
      }
    }
  });

  for (int chunk = 1; chunk < chunks; ++chunk) {
    double* n0 = nums[0].data();
    double* d0 = dens[0].data();
    const double* nc = nums[chunk].data();
    const double* dc = dens[chunk].data();
    for (std::size_t i = 0; i < nums[0].size(); ++i) {
      n0[i] += nc[i];
      d0[i] += dc[i];
    }
  }

  for (int y = 0; y < h; ++y) {
    const double* src = noisy.row(y);
    const double* nrow = nums[0].data() + static_cast<std::size_t>(y) * w;
    const double* drow = dens[0].data() + static_cast<std::size_t>(y) * w;
    double* dst = out.row(y);
    for (int x = 0; x < w; ++x) {
      dst[x] = src[x] + nrow[x] / drow[x];
    }
  }
}

}  // namespace

void Bm3dParams::validate() const {
  if (block_size < 4) throw ContractError("Bm3dParams: block_size must be >= 4");
  if (step < 1) throw ContractError("Bm3dParams: step must be >= 1");
  if (search_radius < 1) throw ContractError("Bm3dParams: search_radius must be >= 1");
  if (!is_pow2(max_blocks_stage1) || !is_pow2(max_blocks_stage2)) {
    throw ContractError("Bm3dParams: max matched blocks must be powers of two");
  }
  if (!(lambda_hard >= 0.0) || !(tau_match_stage1 > 0.0) || !(tau_match_stage2 > 0.0)) {
    throw ContractError("Bm3dParams: thresholds must be positive");
  }
  if (kaiser_beta < 0.0) throw ContractError("Bm3dParams: kaiser_beta must be >= 0");
}

Plane bm3d_denoise(const Plane& noisy, double sigma, const Bm3dParams& params) {
  params.validate();
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ContractError("bm3d_denoise: sigma must be finite and >= 0");
  }
  if (sigma == 0.0 || noisy.empty()) {
    return noisy;
  }
  Plane basic = noisy;
  bm3d_stage(noisy, nullptr, sigma, params, basic);
  Plane out = noisy;
  bm3d_stage(noisy, &basic, sigma, params, out);
  return out;
}

}  // namespace pfapipe
