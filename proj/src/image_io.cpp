#include "omni/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace omni {

namespace {

// Skips PGM whitespace and '#' comments.
void skip_pgm_space(std::istream& in) {
  for (;;) {
    int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

int read_pgm_int(std::istream& in) {
  skip_pgm_space(in);
  int v = -1;
  in >> v;
  if (!in || v < 0) throw data_error("pgm: malformed header");
  return v;
}

}  // namespace

PgmImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("pgm: cannot open " + path);
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] != 'P' || magic[1] != '5') throw data_error("pgm: not a binary PGM: " + path);
  const int w = read_pgm_int(in);
  const int h = read_pgm_int(in);
  const int maxval = read_pgm_int(in);
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535)
    throw data_error("pgm: invalid dimensions in " + path);
  in.get();  // single whitespace after maxval

  PgmImage img;
  img.maxval = maxval;
  img.values = RealGrid(w, h);
  const std::size_t n = static_cast<std::size_t>(w) * h;
  if (maxval < 256) {
    std::vector<std::uint8_t> raw(n);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
    if (!in) throw data_error("pgm: truncated data in " + path);
    for (std::size_t i = 0; i < n; ++i)
      img.values.data()[i] = raw[i] / static_cast<double>(maxval);
  } else {
    std::vector<std::uint8_t> raw(2 * n);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(2 * n));
    if (!in) throw data_error("pgm: truncated data in " + path);
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned v = (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1];
      img.values.data()[i] = v / static_cast<double>(maxval);
    }
  }
  return img;
}

void write_pgm(const RealGrid& values, const std::string& path, int bits) {
  if (bits != 8 && bits != 16) throw data_error("pgm: bits must be 8 or 16");
  const int maxval = (bits == 8) ? 255 : 65535;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("pgm: cannot write " + path);
  out << "P5\n" << values.width() << " " << values.height() << "\n" << maxval << "\n";
  const std::size_t n = values.size();
  if (bits == 8) {
    std::vector<std::uint8_t> raw(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = std::clamp(values.data()[i], 0.0, 1.0);
      raw[i] = static_cast<std::uint8_t>(std::lround(v * maxval));
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(n));
  } else {
    std::vector<std::uint8_t> raw(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = std::clamp(values.data()[i], 0.0, 1.0);
      const unsigned q = static_cast<unsigned>(std::lround(v * maxval));
      raw[2 * i] = static_cast<std::uint8_t>(q >> 8);
      raw[2 * i + 1] = static_cast<std::uint8_t>(q & 0xff);
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(2 * n));
  }
  if (!out) throw data_error("pgm: write failure for " + path);
}

void write_pgm_raw16(const Grid2D<std::uint16_t>& values, const std::string& path, int maxval) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("pgm: cannot write " + path);
  out << "P5\n" << values.width() << " " << values.height() << "\n" << maxval << "\n";
  const std::size_t n = values.size();
  if (maxval < 256) {
    std::vector<std::uint8_t> raw(n);
    for (std::size_t i = 0; i < n; ++i) raw[i] = static_cast<std::uint8_t>(values.data()[i]);
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(n));
  } else {
    std::vector<std::uint8_t> raw(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      raw[2 * i] = static_cast<std::uint8_t>(values.data()[i] >> 8);
      raw[2 * i + 1] = static_cast<std::uint8_t>(values.data()[i] & 0xff);
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(2 * n));
  }
  if (!out) throw data_error("pgm: write failure for " + path);
}

RealGrid read_pfm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("pfm: cannot open " + path);
  std::string magic;
  in >> magic;
  if (magic != "Pf") throw data_error("pfm: only grayscale Pf supported: " + path);
  int w = 0, h = 0;
  double scale = 0.0;
  in >> w >> h >> scale;
  if (w <= 0 || h <= 0 || scale == 0.0) throw data_error("pfm: malformed header in " + path);
  in.get();
  const bool little_endian = scale < 0.0;
  if (!little_endian) throw data_error("pfm: big-endian files not supported: " + path);
  RealGrid grid(w, h);
  std::vector<float> row(static_cast<std::size_t>(w));
  for (int y = h - 1; y >= 0; --y) {  // bottom-up storage
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(sizeof(float) * w));
    if (!in) throw data_error("pfm: truncated data in " + path);
    for (int x = 0; x < w; ++x) grid(x, y) = row[x];
  }
  return grid;
}

void write_pfm(const RealGrid& values, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("pfm: cannot write " + path);
  out << "Pf\n" << values.width() << " " << values.height() << "\n-1.0\n";
  std::vector<float> row(static_cast<std::size_t>(values.width()));
  for (int y = values.height() - 1; y >= 0; --y) {
    for (int x = 0; x < values.width(); ++x) row[x] = static_cast<float>(values(x, y));
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(sizeof(float) * values.width()));
  }
  if (!out) throw data_error("pfm: write failure for " + path);
}

PgmImage read_png(const std::string& path) {
  FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw data_error("png: cannot open " + path);
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw data_error("png: initialization failure");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw data_error("png: decode failure for " + path);
  }
  png_init_io(png, fp);
  png_read_info(png, info);

  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);

  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  if (bit_depth == 16) png_set_swap(png);  // to little-endian words
  png_read_update_info(png, info);

  const int channels = png_get_channels(png, info);
  const int depth = png_get_bit_depth(png, info);
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  std::vector<std::uint8_t> data(rowbytes * h);
  std::vector<png_bytep> rows(h);
  for (png_uint_32 y = 0; y < h; ++y) rows[y] = data.data() + y * rowbytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);

  PgmImage img;
  img.maxval = (depth == 16) ? 65535 : 255;
  img.values = RealGrid(static_cast<int>(w), static_cast<int>(h));
  const double scale = 1.0 / img.maxval;
  for (png_uint_32 y = 0; y < h; ++y) {
    for (png_uint_32 x = 0; x < w; ++x) {
      double sample = 0.0;
      if (channels == 1) {
        if (depth == 16) {
          std::uint16_t v;
          std::memcpy(&v, rows[y] + 2 * x, 2);
          sample = v * scale;
        } else {
          sample = rows[y][x] * scale;
        }
      } else {
        // Rec. 709 luma of the linearized channels.
        double rgb[3];
        for (int c = 0; c < 3; ++c) {
          double s;
          if (depth == 16) {
            std::uint16_t v;
            std::memcpy(&v, rows[y] + 2 * (channels * x + c), 2);
            s = v * scale;
          } else {
            s = rows[y][channels * x + c] * scale;
          }
          rgb[c] = s;
        }
        sample = 0.2126 * rgb[0] + 0.7152 * rgb[1] + 0.0722 * rgb[2];
      }
      img.values(static_cast<int>(x), static_cast<int>(y)) = sample;
    }
  }
  return img;
}

void write_png_gray8(const RealGrid& values, const std::string& path) {
  FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw data_error("png: cannot write " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw data_error("png: initialization failure");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw data_error("png: encode failure for " + path);
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, values.width(), values.height(), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<std::uint8_t> row(static_cast<std::size_t>(values.width()));
  for (int y = 0; y < values.height(); ++y) {
    for (int x = 0; x < values.width(); ++x)
      row[x] = static_cast<std::uint8_t>(
          std::lround(std::clamp(values(x, y), 0.0, 1.0) * 255.0));
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

void write_phase_map(const QuantizedPhaseMap& map, const OpticalConfig& cfg,
                     const std::string& pgm_path, const std::string& sidecar_path) {
  if (map.levels_count > 256)
    throw data_error("write_phase_map: more than 256 levels does not fit an 8-bit PGM");
  write_pgm_raw16(map.levels, pgm_path, map.levels_count - 1);
  nlohmann::json j;
  j["pitch"] = map.pitch;
  j["wavelength"] = cfg.wavelength;
  j["levels_count"] = map.levels_count;
  write_text_file(sidecar_path, j.dump(2) + "\n");
}

QuantizedPhaseMap read_phase_map(const std::string& pgm_path, const std::string& sidecar_path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(sidecar_path));
  } catch (const nlohmann::json::exception& e) {
    throw data_error(std::string("phase sidecar: ") + e.what());
  }
  QuantizedPhaseMap map;
  map.pitch = j.at("pitch").get<double>();
  map.levels_count = j.at("levels_count").get<int>();
  if (map.levels_count < 2) throw data_error("phase sidecar: invalid levels_count");

  const PgmImage img = read_pgm(pgm_path);
  if (img.maxval != map.levels_count - 1)
    throw data_error("phase map: PGM maxval disagrees with the sidecar levels_count");
  map.levels = Grid2D<std::uint16_t>(img.values.width(), img.values.height());
  for (std::size_t i = 0; i < img.values.size(); ++i) {
    const int level = static_cast<int>(std::lround(img.values.data()[i] * img.maxval));
    map.levels.data()[i] = static_cast<std::uint16_t>(level);
  }
  return map;
}

double srgb_to_linear(double s) {
  return (s <= 0.04045) ? s / 12.92 : std::pow((s + 0.055) / 1.055, 2.4);
}

double linear_to_srgb(double v) {
  return (v <= 0.0031308) ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

SceneInput load_scene(const std::string& image_path, const std::string& depth_path,
                      const std::string& sidecar_path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(sidecar_path));
  } catch (const nlohmann::json::exception& e) {
    throw data_error(std::string("scene sidecar: ") + e.what());
  }
  const double d_min = j.at("depth_min").get<double>();
  const double d_max = j.at("depth_max").get<double>();
  if (!(d_max >= d_min)) throw data_error("scene sidecar: depth_max < depth_min");

  PgmImage img;
  const bool is_png = image_path.size() > 4 &&
                      image_path.compare(image_path.size() - 4, 4, ".png") == 0;
  img = is_png ? read_png(image_path) : read_pgm(image_path);

  std::string transfer = j.value("transfer", img.maxval > 255 ? "linear" : "srgb");
  if (transfer == "srgb") {
    for (std::size_t i = 0; i < img.values.size(); ++i)
      img.values.data()[i] = srgb_to_linear(img.values.data()[i]);
  } else if (transfer != "linear") {
    throw data_error("scene sidecar: transfer must be \"srgb\" or \"linear\"");
  }

  const PgmImage depth = read_pgm(depth_path);
  if (!depth.values.same_shape(img.values))
    throw data_error("scene: image and depth map dimensions differ");

  SceneInput scene;
  scene.image = std::move(img.values);
  scene.depth_map = RealGrid(scene.image.width(), scene.image.height());
  for (std::size_t i = 0; i < scene.depth_map.size(); ++i)
    scene.depth_map.data()[i] = d_min + depth.values.data()[i] * (d_max - d_min);
  return scene;
}

void write_scene_sidecar(double depth_min, double depth_max, const std::string& transfer,
                         const std::string& path) {
  nlohmann::json j;
  j["depth_min"] = depth_min;
  j["depth_max"] = depth_max;
  j["transfer"] = transfer;
  write_text_file(path, j.dump(2) + "\n");
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw data_error("write failure for " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace omni
