#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "opident/radon/radon.hpp"

namespace opident::radon {

namespace {

struct Header {
  int rows = 0;
  int cols = 0;
  double extent = 0.0;
  double mu = 0.0;
};

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_grid(std::ostream& os, const Header& h, std::span<const double> values) {
  os << "# " << h.rows << ' ' << h.cols << ' ' << g17(h.extent) << ' ' << g17(h.mu) << '\n';
  for (int r = 0; r < h.rows; ++r) {
    for (int c = 0; c < h.cols; ++c) {
      if (c != 0) os << ',';
      os << g17(values[static_cast<std::size_t>(r) * h.cols + c]);
    }
    os << '\n';
  }
}

double parse_double(std::string_view text, int line) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::runtime_error("csv line " + std::to_string(line) + ": bad number '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> read_grid(std::istream& is, Header& h) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# ", 0) != 0) throw std::runtime_error("csv: missing '# rows cols extent mu'");
  std::istringstream hs(line.substr(2));
  if (!(hs >> h.rows >> h.cols >> h.extent >> h.mu) || h.rows <= 0 || h.cols <= 0) {
    throw std::runtime_error("csv: malformed header");
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(h.rows) * h.cols);
  for (int r = 0; r < h.rows; ++r) {
    if (!std::getline(is, line)) throw std::runtime_error("csv: expected " + std::to_string(h.rows) + " rows");
    std::string_view rest(line);
    int cols = 0;
    while (true) {
      const auto comma = rest.find(',');
      values.push_back(parse_double(rest.substr(0, comma), r + 2));
      ++cols;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cols != h.cols) throw std::runtime_error("csv line " + std::to_string(r + 2) + ": wrong column count");
  }
  return values;
}

}  // namespace

void write_csv(std::ostream& os, const Phantom& p) {
  write_grid(os, Header{p.height(), p.width(), p.extent(), 0.0}, p.values());
}

void write_csv(std::ostream& os, const Sinogram& g) {
  write_grid(os, Header{g.n_angles(), g.n_offsets(), g.extent(), g.mu()}, g.values());
}

Phantom read_phantom_csv(std::istream& is) {
  Header h;
  std::vector<double> values = read_grid(is, h);
  return Phantom(h.cols, h.rows, h.extent, std::move(values));
}

Sinogram read_sinogram_csv(std::istream& is) {
  Header h;
  std::vector<double> values = read_grid(is, h);
  return Sinogram(h.rows, h.cols, h.extent, h.mu, std::move(values));
}

}  // namespace opident::radon
