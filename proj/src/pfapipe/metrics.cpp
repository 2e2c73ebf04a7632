#include "pfapipe/metrics.hpp"

#include <cmath>
#include <sstream>

namespace pfapipe {

namespace {

struct Region {
  int x0, x1, y0, y1;  // half-open
};

Region eval_region(const Plane& ref, const Plane& test, int border, const char* context) {
  require_same_size(ref, test, context);
  if (border < 0) {
    throw ContractError(std::string(context) + ": border must be >= 0");
  }
  Region r{border, ref.width() - border, border, ref.height() - border};
  if (r.x0 >= r.x1 || r.y0 >= r.y1) {
    throw ContractError(std::string(context) + ": border leaves no pixels to evaluate");
  }
  return r;
}

double region_sse(const Plane& ref, const Plane& test, const Region& r) {
  double sse = 0.0;
  for (int y = r.y0; y < r.y1; ++y) {
    const double* a = ref.row(y);
    const double* b = test.row(y);
    for (int x = r.x0; x < r.x1; ++x) {
      double d = a[x] - b[x];
      sse += d * d;
    }
  }
  return sse;
}

std::string score_cell(const std::optional<double>& v) {
  if (!v.has_value()) return "identical";
  std::ostringstream os;
  os.precision(10);
  os << *v;
  return os.str();
}

}  // namespace

std::optional<double> psnr(const Plane& ref, const Plane& test, double peak, int border) {
  if (!(peak > 0.0)) {
    throw ContractError("psnr: peak must be > 0");
  }
  Region r = eval_region(ref, test, border, "psnr");
  double n = static_cast<double>(r.x1 - r.x0) * (r.y1 - r.y0);
  double mse = region_sse(ref, test, r) / n;
  if (mse == 0.0) return std::nullopt;
  return 10.0 * std::log10(peak * peak / mse);
}

std::optional<double> cpsnr(const RgbImage& ref, const RgbImage& test, double peak,
                            int border) {
  if (!(peak > 0.0)) {
    throw ContractError("cpsnr: peak must be > 0");
  }
  double sse = 0.0, n = 0.0;
  for (int c = 0; c < 3; ++c) {
    Region r = eval_region(ref.channel(c), test.channel(c), border, "cpsnr");
    sse += region_sse(ref.channel(c), test.channel(c), r);
    n += static_cast<double>(r.x1 - r.x0) * (r.y1 - r.y0);
  }
  double mse = sse / n;
  if (mse == 0.0) return std::nullopt;
  return 10.0 * std::log10(peak * peak / mse);
}

double angle_rmse(const Plane& ref_deg, const Plane& test_deg, int border,
                  const Plane* dop, double dop_threshold) {
  Region r = eval_region(ref_deg, test_deg, border, "angle_rmse");
  if (dop) {
    require_same_size(ref_deg, *dop, "angle_rmse");
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (int y = r.y0; y < r.y1; ++y) {
    const double* a = ref_deg.row(y);
    const double* b = test_deg.row(y);
    for (int x = r.x0; x < r.x1; ++x) {
      if (a[x] < 0.0 || a[x] >= 180.0 || b[x] < 0.0 || b[x] >= 180.0) {
        throw ContractError("angle_rmse: angles must lie in [0,180)");
      }
      if (dop && dop->at(y, x) < dop_threshold) continue;
      double d = std::abs(a[x] - b[x]);
      d = std::min(d, 180.0 - d);
      sum += d * d;
      ++count;
    }
  }
  if (count == 0) {
    throw ContractError("angle_rmse: DoP mask leaves no pixels to evaluate");
  }
  return std::sqrt(sum / static_cast<double>(count));
}

std::string eval_csv_header() {
  return "scene,method,noise_level,I0,I45,I90,I135,S0,S1,S2,DoP,AoP_err";
}

std::string eval_csv_row(const EvalReport& rep) {
  std::ostringstream os;
  os.precision(10);
  os << rep.scene << ',' << rep.method << ',' << rep.noise_level << ','
     << score_cell(rep.i0) << ',' << score_cell(rep.i45) << ',' << score_cell(rep.i90)
     << ',' << score_cell(rep.i135) << ',' << score_cell(rep.s0) << ','
     << score_cell(rep.s1) << ',' << score_cell(rep.s2) << ',' << score_cell(rep.dop)
     << ',' << rep.aop_rmse_deg;
  return os.str();
}

EvalReport mean_report(const std::vector<EvalReport>& rows, const std::string& method,
                       const std::string& noise_level) {
  if (rows.empty()) {
    throw ContractError("mean_report: no rows");
  }
  auto mean_of = [&](std::optional<double> EvalReport::* field) -> std::optional<double> {
    double sum = 0.0;
    for (const auto& row : rows) {
      const auto& v = row.*field;
      if (!v.has_value()) return std::nullopt;  // unbounded constituent
      sum += *v;
    }
    return sum / static_cast<double>(rows.size());
  };
  EvalReport out;
  out.scene = "mean";
  out.method = method;
  out.noise_level = noise_level;
  out.i0 = mean_of(&EvalReport::i0);
  out.i45 = mean_of(&EvalReport::i45);
  out.i90 = mean_of(&EvalReport::i90);
  out.i135 = mean_of(&EvalReport::i135);
  out.s0 = mean_of(&EvalReport::s0);
  out.s1 = mean_of(&EvalReport::s1);
  out.s2 = mean_of(&EvalReport::s2);
  out.dop = mean_of(&EvalReport::dop);
  double aop = 0.0;
  for (const auto& row : rows) aop += row.aop_rmse_deg;
  out.aop_rmse_deg = aop / static_cast<double>(rows.size());
  return out;
}

}  // namespace pfapipe
