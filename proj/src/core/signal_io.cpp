#include "signal_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace wigmd {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot open for writing: " + path);
  out << text;
  if (!out) fail(Errc::io_error, "write failed: " + path);
}

}  // namespace

std::string signal_to_text(const Signal& f) {
  std::string out = "# wigmd-signal N=" + std::to_string(f.size()) + " L=" + format_double(f.grid().half_width()) + "\n";
  for (int i = 0; i < f.size(); ++i)
    out += format_double(f[i].real()) + " " + format_double(f[i].imag()) + "\n";
  return out;
}

Signal signal_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) fail(Errc::io_error, "empty signal file");
  int n = 0;
  double half_width = 0.0;
  if (std::sscanf(header.c_str(), "# wigmd-signal N=%d L=%lg", &n, &half_width) != 2)
    fail(Errc::io_error, "malformed signal header (expected '# wigmd-signal N=... L=...')");
  std::vector<cplx> samples;
  samples.reserve(static_cast<size_t>(n));
  double re = 0.0, im = 0.0;
  while (in >> re >> im) samples.emplace_back(re, im);
  if (static_cast<int>(samples.size()) != n)
    fail(Errc::io_error, "signal file sample count does not match the header");
  return Signal(Grid1D(half_width, n), std::move(samples));
}

void save_signal(const std::string& path, const Signal& f) { write_file(path, signal_to_text(f)); }

Signal load_signal(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return signal_from_text(buf.str());
}

std::string field_to_text(const Field2D& f) {
  std::string out = "# wigmd-field N=" + std::to_string(f.size_x()) +
                    " L=" + format_double(f.grid().x.half_width()) +
                    " xi_half_width=" + format_double(f.grid().y.half_width()) + "\n";
  for (int a = 0; a < f.size_x(); ++a)
    for (int b = 0; b < f.size_y(); ++b)
      out += format_double(f.at(a, b).real()) + " " + format_double(f.at(a, b).imag()) + "\n";
  return out;
}

void save_field(const std::string& path, const Field2D& f) { write_file(path, field_to_text(f)); }

}  // namespace wigmd
