#include "afd2d/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "afd2d/errors.hpp"

namespace afd2d {

namespace {

// Next whitespace-separated token of a PGM header, skipping '#' comments.
std::string next_pgm_token(std::istream& in) {
  std::string token;
  for (;;) {
    const int c = in.peek();
    if (c == EOF) throw IoError("pgm: unexpected end of header");
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    if (c == '#') {
      std::string line;
      std::getline(in, line);
      continue;
    }
    break;
  }
  in >> token;
  if (token.empty()) throw IoError("pgm: unexpected end of header");
  return token;
}

int parse_positive(const std::string& token, const char* what) {
  try {
    size_t used = 0;
    const int v = std::stoi(token, &used);
    if (used != token.size() || v <= 0) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw IoError(std::string("pgm: bad ") + what);
  }
}

}  // namespace

RMatrix read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  const std::string magic = next_pgm_token(in);
  if (magic != "P2" && magic != "P5")
    throw IoError("pgm: unsupported format '" + magic + "' in " + path);
  const int cols = parse_positive(next_pgm_token(in), "width");
  const int rows = parse_positive(next_pgm_token(in), "height");
  const int maxval = parse_positive(next_pgm_token(in), "maxval");
  if (maxval > 255) throw IoError("pgm: only 8-bit images are supported");

  RMatrix image(rows, cols);
  if (magic == "P2") {
    for (int p = 0; p < rows; ++p)
      for (int q = 0; q < cols; ++q) {
        long v;
        if (!(in >> v)) throw IoError("pgm: truncated pixel data in " + path);
        if (v < 0 || v > maxval) throw IoError("pgm: pixel out of range");
        image(p, q) = static_cast<double>(v);
      }
  } else {
    in.get();  // single whitespace after maxval
    std::string buf(static_cast<size_t>(rows) * cols, '\0');
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() != static_cast<std::streamsize>(buf.size()))
      throw IoError("pgm: truncated pixel data in " + path);
    for (int p = 0; p < rows; ++p)
      for (int q = 0; q < cols; ++q)
        image(p, q) = static_cast<double>(
            static_cast<unsigned char>(buf[static_cast<size_t>(p) * cols + q]));
  }
  return image;
}

void write_pgm(const std::string& path, const RMatrix& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << "P5\n" << image.cols() << " " << image.rows() << "\n255\n";
  std::string buf;
  buf.reserve(static_cast<size_t>(image.rows()) * image.cols());
  for (Eigen::Index p = 0; p < image.rows(); ++p)
    for (Eigen::Index q = 0; q < image.cols(); ++q) {
      const double v = std::clamp(image(p, q), 0.0, 255.0);
      buf.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(v))));
    }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("failed writing " + path);
}

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

void write_signal_csv(const std::string& path, const Signal2D& f) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << f.rows() << "," << f.cols() << "," << format_float(f.grid().offset)
      << "\n";
  for (int p = 0; p < f.rows(); ++p)
    for (int q = 0; q < f.cols(); ++q)
      out << p << "," << q << "," << format_float(f.values()(p, q).real()) << ","
          << format_float(f.values()(p, q).imag()) << "\n";
  if (!out) throw IoError("failed writing " + path);
}

Signal2D read_signal_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("signal csv: missing header");
  int m = 0, n = 0;
  double offset = 0.0;
  {
    std::istringstream header(line);
    char c1 = 0, c2 = 0;
    if (!(header >> m >> c1 >> n >> c2 >> offset) || c1 != ',' || c2 != ',')
      throw IoError("signal csv: malformed header");
  }
  if (m < 1 || n < 1) throw IoError("signal csv: bad dimensions");
  CMatrix values = CMatrix::Zero(m, n);
  RMatrix seen = RMatrix::Zero(m, n);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    int p = 0, q = 0;
    double re = 0.0, im = 0.0;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(row >> p >> c1 >> q >> c2 >> re >> c3 >> im) || c1 != ',' ||
        c2 != ',' || c3 != ',')
      throw IoError("signal csv: malformed row");
    if (p < 0 || p >= m || q < 0 || q >= n)
      throw IoError("signal csv: index out of range");
    values(p, q) = Complex(re, im);
    seen(p, q) = 1.0;
  }
  if (seen.sum() != static_cast<double>(m) * n)
    throw IoError("signal csv: missing samples");
  return Signal2D(TorusGrid(m, n, offset), values);
}

}  // namespace afd2d
