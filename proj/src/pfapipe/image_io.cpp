#include "pfapipe/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

#include <json.hpp>

namespace pfapipe {

namespace {

using nlohmann::json;

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) {
    throw IoError("cannot open '" + path + "'");
  }
  return f;
}

[[noreturn]] void png_error_fn(png_structp, png_const_charp msg) {
  throw FormatError(std::string("png: ") + (msg ? msg : "unknown error"));
}

void png_warn_fn(png_structp, png_const_charp) {}

Plane load_png16(const std::string& path) {
  FilePtr f = open_file(path, "rb");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                           png_error_fn, png_warn_fn);
  png_infop info = png_create_info_struct(png);
  try {
    png_init_io(png, f.get());
    png_read_info(png, info);

    png_uint_32 width = png_get_image_width(png, info);
    png_uint_32 height = png_get_image_height(png, info);
    int bit_depth = png_get_bit_depth(png, info);
    int color_type = png_get_color_type(png, info);
    if (color_type != PNG_COLOR_TYPE_GRAY || bit_depth != 16) {
      throw FormatError("'" + path + "' is not a single-channel 16-bit PNG");
    }
    if constexpr (std::endian::native == std::endian::little) {
      png_set_swap(png);
    }
    png_read_update_info(png, info);

    std::vector<std::uint16_t> row(width);
    Plane plane(static_cast<int>(width), static_cast<int>(height));
    for (png_uint_32 y = 0; y < height; ++y) {
      png_read_row(png, reinterpret_cast<png_bytep>(row.data()), nullptr);
      double* out = plane.row(static_cast<int>(y));
      for (png_uint_32 x = 0; x < width; ++x) {
        out[x] = row[x] / 65535.0;
      }
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return plane;
  } catch (...) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw;
  }
}

std::uint16_t quantize16(double v) {
  v = std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint16_t>(std::lround(v * 65535.0));
}

void store_png16(const Plane& plane, const std::string& path) {
  FilePtr f = open_file(path, "wb");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            png_error_fn, png_warn_fn);
  png_infop info = png_create_info_struct(png);
  try {
    png_init_io(png, f.get());
    png_set_IHDR(png, info, plane.width(), plane.height(), 16,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    if constexpr (std::endian::native == std::endian::little) {
      png_set_swap(png);
    }

    std::vector<std::uint16_t> row(plane.width());
    for (int y = 0; y < plane.height(); ++y) {
      const double* in = plane.row(y);
      for (int x = 0; x < plane.width(); ++x) row[x] = quantize16(in[x]);
      png_write_row(png, reinterpret_cast<png_bytep>(row.data()));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
}

std::string sidecar_path(const std::string& path) { return path + ".json"; }

struct PfiHeader {
  int width = 0;
  int height = 0;
  std::vector<ChannelLabel> channels;
};

PfiHeader read_sidecar(const std::string& path) {
  std::ifstream in(sidecar_path(path));
  if (!in) {
    throw IoError("missing sidecar '" + sidecar_path(path) + "'");
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FormatError("sidecar '" + sidecar_path(path) + "': " + e.what());
  }
  PfiHeader h;
  try {
    h.width = j.at("width").get<int>();
    h.height = j.at("height").get<int>();
    for (const auto& c : j.at("channels")) {
      h.channels.push_back({c.at("angle").get<int>(),
                            color_from_name(c.at("color").get<std::string>())});
    }
  } catch (const json::exception& e) {
    throw FormatError("sidecar '" + sidecar_path(path) + "': " + e.what());
  }
  if (h.width <= 0 || h.height <= 0 || h.channels.empty()) {
    throw FormatError("sidecar '" + sidecar_path(path) + "': bad dimensions or empty channel list");
  }
  return h;
}

void write_sidecar(const std::string& path, int width, int height,
                   const std::vector<ChannelLabel>& channels) {
  json j;
  j["width"] = width;
  j["height"] = height;
  j["channels"] = json::array();
  for (const auto& c : channels) {
    j["channels"].push_back({{"angle", c.angle}, {"color", color_name(c.color)}});
  }
  std::ofstream out(sidecar_path(path));
  if (!out) {
    throw IoError("cannot write sidecar '" + sidecar_path(path) + "'");
  }
  out << j.dump(2) << "\n";
  if (!out) {
    throw IoError("short write to '" + sidecar_path(path) + "'");
  }
}

std::vector<Plane> load_pfi_planes(const std::string& path, PfiHeader* header_out) {
  PfiHeader h = read_sidecar(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "'");
  }

  std::size_t plane_samples = static_cast<std::size_t>(h.width) * h.height;
  std::vector<unsigned char> bytes(plane_samples * 4);
  std::vector<Plane> planes;
  planes.reserve(h.channels.size());
  for (std::size_t c = 0; c < h.channels.size(); ++c) {
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
      throw FormatError("'" + path + "': payload shorter than sidecar declares");
    }
    std::vector<double> samples(plane_samples);
    for (std::size_t i = 0; i < plane_samples; ++i) {
      std::uint32_t bits = static_cast<std::uint32_t>(bytes[i * 4]) |
                           (static_cast<std::uint32_t>(bytes[i * 4 + 1]) << 8) |
                           (static_cast<std::uint32_t>(bytes[i * 4 + 2]) << 16) |
                           (static_cast<std::uint32_t>(bytes[i * 4 + 3]) << 24);
      samples[i] = static_cast<double>(std::bit_cast<float>(bits));
    }
    planes.emplace_back(h.width, h.height, std::move(samples));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("'" + path + "': payload longer than sidecar declares");
  }
  if (header_out) *header_out = std::move(h);
  return planes;
}

void store_pfi_planes(const std::string& path, const std::vector<const Plane*>& planes,
                      const std::vector<ChannelLabel>& channels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  std::vector<unsigned char> bytes;
  for (const Plane* p : planes) {
    bytes.resize(p->size() * 4);
    const double* s = p->data();
    for (std::size_t i = 0; i < p->size(); ++i) {
      std::uint32_t bits = std::bit_cast<std::uint32_t>(static_cast<float>(s[i]));
      bytes[i * 4] = static_cast<unsigned char>(bits & 0xff);
      bytes[i * 4 + 1] = static_cast<unsigned char>((bits >> 8) & 0xff);
      bytes[i * 4 + 2] = static_cast<unsigned char>((bits >> 16) & 0xff);
      bytes[i * 4 + 3] = static_cast<unsigned char>((bits >> 24) & 0xff);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
  }
  if (!out) {
    throw IoError("short write to '" + path + "'");
  }
  out.close();
  write_sidecar(path, planes.front()->width(), planes.front()->height(), channels);
}

}  // namespace

PlaneFormat plane_format_from_name(const std::string& name) {
  if (name == "png16" || name == "png") return PlaneFormat::png16;
  if (name == "pfi-raw" || name == "pfi") return PlaneFormat::pfi_raw;
  throw ContractError("unknown plane format: " + name);
}

Plane load_plane(const std::string& path, PlaneFormat format) {
  if (format == PlaneFormat::png16) {
    return load_png16(path);
  }
  PfiHeader h;
  std::vector<Plane> planes = load_pfi_planes(path, &h);
  if (planes.size() != 1) {
    throw FormatError("'" + path + "': expected a single channel, sidecar declares " +
                      std::to_string(planes.size()));
  }
  return std::move(planes.front());
}

void store_plane(const Plane& plane, const std::string& path, PlaneFormat format) {
  if (plane.empty()) {
    throw ContractError("store_plane: empty plane");
  }
  if (format == PlaneFormat::png16) {
    store_png16(plane, path);
    return;
  }
  store_pfi_planes(path, {&plane}, {{kNoAngle, Color::mono}});
}

PolarizationStack load_stack_pfi(const std::string& path) {
  PfiHeader h;
  std::vector<Plane> planes = load_pfi_planes(path, &h);
  PolarizationStack stack;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    stack.add(h.channels[i], std::move(planes[i]));
  }
  return stack;
}

void store_stack_pfi(const PolarizationStack& stack, const std::string& path) {
  if (stack.channel_count() == 0) {
    throw ContractError("store_stack_pfi: empty stack");
  }
  std::vector<const Plane*> planes;
  std::vector<ChannelLabel> labels;
  for (const auto& c : stack.channels()) {
    planes.push_back(&c.plane);
    labels.push_back(c.label);
  }
  store_pfi_planes(path, planes, labels);
}

void store_rgb_png8(const RgbImage& image, const std::string& path) {
  FilePtr f = open_file(path, "wb");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            png_error_fn, png_warn_fn);
  png_infop info = png_create_info_struct(png);
  try {
    png_init_io(png, f.get());
    png_set_IHDR(png, info, image.width(), image.height(), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<unsigned char> row(static_cast<std::size_t>(image.width()) * 3);
    for (int y = 0; y < image.height(); ++y) {
      for (int x = 0; x < image.width(); ++x) {
        for (int c = 0; c < 3; ++c) {
          double v = std::clamp(image.channel(c).at(y, x), 0.0, 1.0);
          row[x * 3 + c] = static_cast<unsigned char>(std::lround(v * 255.0));
        }
      }
      png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
}

}  // namespace pfapipe
