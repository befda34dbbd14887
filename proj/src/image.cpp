#include "dtfuse/image.hpp"

#include "dtfuse/error.hpp"
#include "dtfuse/rng.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <string>

namespace dtfuse {

GrayImage::GrayImage(std::size_t h, std::size_t w, std::vector<double> px, double range)
    : height(h), width(w), pixels(std::move(px)), range_max(range) {
  validate();
}

void GrayImage::validate() const {
  if (pixels.size() != height * width)
    throw InvalidArgument("image pixel count " + std::to_string(pixels.size()) + " does not match " +
                          std::to_string(height) + "x" + std::to_string(width));
  if (!(range_max > 0.0) || !std::isfinite(range_max))
    throw InvalidArgument("image range_max must be positive and finite");
  if (!std::all_of(pixels.begin(), pixels.end(), [](double v) { return std::isfinite(v); }))
    throw InvalidArgument("image contains non-finite pixels");
}

namespace {

using Bytes = std::vector<unsigned char>;

Bytes slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ImageIoError(ImageIoError::Kind::Unreadable, "cannot open '" + path.string() + "'");
  Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad())
    throw ImageIoError(ImageIoError::Kind::Unreadable, "read failed on '" + path.string() + "'");
  return bytes;
}

// Netpbm header tokenizer; '#' comments run to end of line.
class PnmHeader {
public:
  PnmHeader(const Bytes& bytes, const std::string& name) : bytes_(bytes), name_(name) {}

  unsigned long next_number() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_]))
      throw ImageIoError(ImageIoError::Kind::MalformedHeader, "malformed header in '" + name_ + "'");
    unsigned long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000ul)
        throw ImageIoError(ImageIoError::Kind::MalformedHeader, "header value too large in '" + name_ + "'");
      ++pos_;
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t payload_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
      throw ImageIoError(ImageIoError::Kind::MalformedHeader, "malformed header in '" + name_ + "'");
    return pos_ + 1;
  }

private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const Bytes& bytes_;
  const std::string& name_;
  std::size_t pos_ = 2;
};

GrayImage read_pnm(const Bytes& bytes, const std::string& name, bool rgb) {
  PnmHeader header(bytes, name);
  const std::size_t width = header.next_number();
  const std::size_t height = header.next_number();
  const unsigned long maxval = header.next_number();
  const std::size_t offset = header.payload_offset();
  if (width == 0 || height == 0 || maxval == 0 || maxval > 65535)
    throw ImageIoError(ImageIoError::Kind::MalformedHeader, "invalid dimensions or maxval in '" + name + "'");

  const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
  const std::size_t channels = rgb ? 3 : 1;
  const std::size_t needed = width * height * channels * sample_bytes;
  if (bytes.size() - offset < needed)
    throw ImageIoError(ImageIoError::Kind::TruncatedPayload,
                       "truncated pixel payload in '" + name + "': expected " + std::to_string(needed) +
                           " bytes, found " + std::to_string(bytes.size() - offset));

  const double range = sample_bytes == 2 ? 65535.0 : 255.0;
  auto sample = [&](std::size_t i) -> double {
    const unsigned char* p = bytes.data() + offset + i * sample_bytes;
    return sample_bytes == 2 ? static_cast<double>((p[0] << 8) | p[1]) : static_cast<double>(p[0]);
  };

  const std::size_t n = width * height;
  if (!rgb) {
    std::vector<double> px(n);
    for (std::size_t i = 0; i < n; ++i) px[i] = sample(i);
    return GrayImage(height, width, std::move(px), range);
  }
  GrayImage r(height, width, range), g(height, width, range), b(height, width, range);
  for (std::size_t i = 0; i < n; ++i) {
    r.pixels[i] = sample(3 * i);
    g.pixels[i] = sample(3 * i + 1);
    b.pixels[i] = sample(3 * i + 2);
  }
  GrayImage gray = to_grayscale(r, g, b);
  for (double& v : gray.pixels) v = std::round(v);
  return gray;
}

GrayImage read_png(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str()))
    throw ImageIoError(ImageIoError::Kind::MalformedHeader,
                       "cannot decode PNG '" + path.string() + "': " + image.message);

  const bool linear = (image.format & PNG_FORMAT_FLAG_LINEAR) != 0;  // 16-bit source
  const bool alpha = (image.format & PNG_FORMAT_FLAG_ALPHA) != 0;
  const bool colormap = (image.format & PNG_FORMAT_FLAG_COLORMAP) != 0;
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  if (linear || alpha || colormap) {
    png_image_free(&image);
    throw ImageIoError(ImageIoError::Kind::UnsupportedFormat,
                       "only 8-bit grayscale or RGB PNG is supported: '" + path.string() + "'");
  }

  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw ImageIoError(ImageIoError::Kind::TruncatedPayload, "cannot decode PNG '" + path.string() + "': " + msg);
  }

  const std::size_t h = image.height, w = image.width, n = h * w;
  if (!color) return GrayImage(h, w, std::vector<double>(buffer.begin(), buffer.end()), 255.0);

  GrayImage r(h, w), g(h, w), b(h, w);
  for (std::size_t i = 0; i < n; ++i) {
    r.pixels[i] = buffer[3 * i];
    g.pixels[i] = buffer[3 * i + 1];
    b.pixels[i] = buffer[3 * i + 2];
  }
  GrayImage gray = to_grayscale(r, g, b);
  for (double& v : gray.pixels) v = std::round(v);
  return gray;
}

}  // namespace

GrayImage read_image(const std::filesystem::path& path) {
  const Bytes bytes = slurp(path);
  static constexpr std::array<unsigned char, 4> png_magic{0x89, 'P', 'N', 'G'};
  if (bytes.size() >= 4 && std::equal(png_magic.begin(), png_magic.end(), bytes.begin())) return read_png(path);
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return read_pnm(bytes, path.string(), false);
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') return read_pnm(bytes, path.string(), true);
  throw ImageIoError(ImageIoError::Kind::UnsupportedFormat, "unsupported image format in '" + path.string() + "'");
}

void write_image(const GrayImage& img, const std::filesystem::path& path) {
  img.validate();
  const long maxval = std::lround(img.range_max);
  if (maxval < 1 || maxval > 65535)
    throw InvalidArgument("range_max must round into [1, 65535] to be written as PGM");
  const bool wide = maxval > 255;

  std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n" +
                    std::to_string(maxval) + "\n";
  out.reserve(out.size() + img.size() * (wide ? 2 : 1));
  for (double v : img.pixels) {
    const auto q = static_cast<unsigned>(std::lround(std::clamp(v, 0.0, static_cast<double>(maxval))));
    if (wide) out.push_back(static_cast<char>(q >> 8));
    out.push_back(static_cast<char>(q & 0xFF));
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ImageIoError(ImageIoError::Kind::Unwritable, "cannot open '" + path.string() + "' for writing");
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw ImageIoError(ImageIoError::Kind::Unwritable, "write failed on '" + path.string() + "'");
}

GrayImage to_grayscale(const GrayImage& r, const GrayImage& g, const GrayImage& b) {
  if (r.height != g.height || r.height != b.height || r.width != g.width || r.width != b.width)
    throw InvalidArgument("to_grayscale: channel dimensions differ");
  GrayImage out(r.height, r.width, r.range_max);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.pixels[i] = 0.299 * r.pixels[i] + 0.587 * g.pixels[i] + 0.114 * b.pixels[i];
  return out;
}

GrayImage clamp_to_range(GrayImage img) {
  for (double& v : img.pixels) v = std::clamp(v, 0.0, img.range_max);
  return img;
}

// ---------------------------------------------------------------------------
// Phantom

namespace {

struct Blob {
  double row, col, sigma, amplitude;
};

struct PhantomGeometry {
  double center_row, center_col;
  double semi_rows, semi_cols;  // outer skull semi-axes
  double tilt;                  // radians
  Blob lesion;
  std::array<Blob, 6> tissue;
};

// Draw order is fixed; texture noise is drawn after the geometry.
PhantomGeometry make_geometry(std::size_t size, Rng& rng) {
  const double s = static_cast<double>(size);
  PhantomGeometry g{};
  g.center_row = s / 2.0 + rng.uniform(-0.02, 0.02) * s;
  g.center_col = s / 2.0 + rng.uniform(-0.02, 0.02) * s;
  g.semi_rows = 0.45 * s * rng.uniform(0.97, 1.03);
  g.semi_cols = 0.38 * s * rng.uniform(0.97, 1.03);
  g.tilt = rng.uniform(-0.15, 0.15);

  const double lr = rng.uniform(0.15, 0.45), la = rng.uniform(0.0, 2.0 * std::numbers::pi);
  g.lesion = {g.center_row + lr * g.semi_rows * std::sin(la), g.center_col + lr * g.semi_cols * std::cos(la),
              s * rng.uniform(0.035, 0.06), 1.0};
  for (Blob& b : g.tissue) {
    const double r = rng.uniform(0.0, 0.6), a = rng.uniform(0.0, 2.0 * std::numbers::pi);
    b = {g.center_row + r * g.semi_rows * std::sin(a), g.center_col + r * g.semi_cols * std::cos(a),
         s * rng.uniform(0.06, 0.16), rng.uniform(25.0, 70.0)};
  }
  return g;
}

double elliptic_radius(const PhantomGeometry& g, double row, double col) {
  const double dr = row - g.center_row, dc = col - g.center_col;
  const double u = std::cos(g.tilt) * dc + std::sin(g.tilt) * dr;
  const double v = -std::sin(g.tilt) * dc + std::cos(g.tilt) * dr;
  return std::hypot(u / g.semi_cols, v / g.semi_rows);
}

double gaussian(const Blob& b, double row, double col) {
  const double d2 = (row - b.row) * (row - b.row) + (col - b.col) * (col - b.col);
  return std::exp(-d2 / (2.0 * b.sigma * b.sigma));
}

// Two lateral ventricles, mirrored about the ellipse's minor axis.
bool in_ventricle(const PhantomGeometry& g, double row, double col) {
  const double dr = (row - g.center_row) / g.semi_rows, dc = (col - g.center_col) / g.semi_cols;
  for (double side : {-1.0, 1.0}) {
    const double x = (dc - side * 0.18) / 0.09, y = (dr + 0.05) / 0.25;
    if (x * x + y * y <= 1.0) return true;
  }
  return false;
}

constexpr double kRingInner = 0.88;

void check_phantom_size(std::size_t size) {
  if (size < 32 || size % 8 != 0)
    throw InvalidArgument("phantom size must be >= 32 and divisible by 8, got " + std::to_string(size));
}

}  // namespace

double phantom_radius(std::size_t size, std::uint64_t seed, std::size_t row, std::size_t col) {
  check_phantom_size(size);
  Rng rng(seed);
  const PhantomGeometry g = make_geometry(size, rng);
  return elliptic_radius(g, static_cast<double>(row) + 0.5, static_cast<double>(col) + 0.5);
}

std::pair<GrayImage, GrayImage> generate_phantom_pair(std::size_t size, std::uint64_t seed) {
  check_phantom_size(size);
  Rng rng(seed);
  const PhantomGeometry g = make_geometry(size, rng);

  GrayImage ct(size, size), mr(size, size);
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      const double y = static_cast<double>(r) + 0.5, x = static_cast<double>(c) + 0.5;
      const double rho = elliptic_radius(g, y, x);
      // Noise is drawn for every pixel so the stream position never depends on geometry.
      const double n1 = rng.normal(), n2 = rng.normal();
      double ct_v = 0.0, mr_v = 0.0;
      if (rho <= 1.0 && rho >= kRingInner) {
        ct_v = 215.0 + 18.0 * n1;
        mr_v = 35.0 + 4.0 * n2;
      } else if (rho < kRingInner) {
        const double lesion = gaussian(g.lesion, y, x);
        double tissue = 0.0;
        for (const Blob& b : g.tissue) tissue += b.amplitude * gaussian(b, y, x);
        ct_v = 28.0 + 45.0 * lesion + 2.5 * n1;
        mr_v = 85.0 + tissue + 120.0 * lesion + 4.0 * n2;
        if (in_ventricle(g, y, x)) {
          ct_v = 10.0 + 2.0 * n1;
          mr_v = 210.0 + 5.0 * n2;
        }
      }
      ct.at(r, c) = std::round(std::clamp(ct_v, 0.0, 255.0));
      mr.at(r, c) = std::round(std::clamp(mr_v, 0.0, 255.0));
    }
  }
  return {std::move(ct), std::move(mr)};
}

}  // namespace dtfuse
