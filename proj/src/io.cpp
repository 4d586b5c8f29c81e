#include "beamalign/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "beamalign/error.hpp"

namespace beamalign {

namespace {

bool numeric_start(const std::string& line) {
  const auto p = line.find_first_not_of(" \t");
  if (p == std::string::npos) return false;
  const char c = line[p];
  return (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.';
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

std::vector<double> parse_row(const std::string& line, std::size_t expected) {
  std::vector<double> v;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(cell, &used));
    } catch (const std::exception&) {
      throw DomainError("malformed numeric field '" + cell + "'");
    }
  }
  if (v.size() != expected)
    throw DomainError("expected " + std::to_string(expected) + " fields in '" + line + "'");
  return v;
}

int to_exponent(double v) {
  if (v < 0 || v != std::floor(v)) throw DomainError("exponent must be a non-negative integer");
  return static_cast<int>(v);
}

SparsePolynomial terms_to_poly(const std::vector<std::string>& rows, BeamAngles center) {
  std::vector<Term> terms;
  for (const auto& r : rows) {
    const auto f = parse_row(r, 3);
    terms.push_back({{to_exponent(f[0]), to_exponent(f[1])}, f[2]});
  }
  return SparsePolynomial(std::move(terms), center);
}

// Splits into blocks of numeric lines separated by blank lines.
std::vector<std::vector<std::string>> read_blocks(std::istream& is) {
  std::vector<std::vector<std::string>> blocks(1);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) {
      if (!blocks.back().empty()) blocks.emplace_back();
      continue;
    }
    if (line.rfind('#', 0) == 0 || !numeric_start(line)) continue;
    blocks.back().push_back(line);
  }
  if (blocks.back().empty()) blocks.pop_back();
  return blocks;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_series_csv(std::ostream& os, const TruncatedSeries& s) {
  os << "deg_rx,deg_tx,coeff_real,coeff_imag\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto e = MonomialOrder::unrank(i);
    os << e.rx << ',' << e.tx << ',' << format_double(s.coeffs()[i].real()) << ','
       << format_double(s.coeffs()[i].imag()) << '\n';
  }
}

void write_polynomial_csv(std::ostream& os, const SparsePolynomial& p) {
  os << "deg_rx,deg_tx,coeff\n";
  for (const auto& t : p.terms())
    os << t.exponent.rx << ',' << t.exponent.tx << ',' << format_double(t.coeff) << '\n';
}

SparsePolynomial read_polynomial_csv(std::istream& is, BeamAngles center) {
  std::vector<std::string> rows;
  for (auto& b : read_blocks(is)) rows.insert(rows.end(), b.begin(), b.end());
  return terms_to_poly(rows, center);
}

SolverFixture read_fixture(std::istream& is) {
  const auto blocks = read_blocks(is);
  if (blocks.size() < 2 || blocks.size() > 3)
    throw DomainError("fixture needs two polynomial blocks and an optional root block");
  SolverFixture fx;
  fx.p1 = terms_to_poly(blocks[0], {});
  fx.p2 = terms_to_poly(blocks[1], {});
  if (blocks.size() == 3) {
    for (const auto& r : blocks[2]) {
      const auto f = parse_row(r, 4);
      fx.roots.push_back({{f[0], f[1]}, {f[2], f[3]}});
    }
  }
  return fx;
}

SolverFixture read_fixture(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open fixture " + path.string());
  return read_fixture(is);
}

void write_fixture(std::ostream& os, const SolverFixture& fx) {
  write_polynomial_csv(os, fx.p1);
  os << '\n';
  write_polynomial_csv(os, fx.p2);
  if (!fx.roots.empty()) {
    os << "\nre_rx,im_rx,re_tx,im_tx\n";
    for (const auto& [rx, tx] : fx.roots)
      os << format_double(rx.real()) << ',' << format_double(rx.imag()) << ',' << format_double(tx.real())
         << ',' << format_double(tx.imag()) << '\n';
  }
}

void write_results_csv(std::ostream& os, const std::vector<ExperimentRecord>& records) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  os << kResultsHeader << '\n';
  for (const auto& r : records) {
    os << format_double(r.eps1) << ',' << format_double(r.eps2) << ','
       << (r.eta ? std::to_string(*r.eta) : std::string("nan")) << ',' << format_double(r.delta.value_or(nan))
       << ',' << format_double(r.objective.value_or(nan)) << ',' << format_double(r.r_est.value_or(nan)) << ','
       << format_double(r.r_exh) << ',' << format_double(r.abs_diff.value_or(nan)) << ',' << r.n_real_roots
       << ',' << r.status << ',' << format_double(r.wall_ms) << '\n';
  }
}

void write_sweep_svg(std::ostream& os, const std::vector<ExperimentRecord>& records) {
  constexpr double width = 640, height = 400, margin = 50;
  double top = 0.0;
  for (const auto& r : records) {
    top = std::max(top, r.objective.value_or(0.0));
    top = std::max(top, r.abs_diff.value_or(0.0));
  }
  if (top <= 0.0) top = 1.0;
  const double n = static_cast<double>(std::max<std::size_t>(records.size(), 2) - 1);
  auto x_at = [&](std::size_t i) { return margin + (width - 2 * margin) * static_cast<double>(i) / n; };
  auto y_at = [&](double v) { return height - margin - (height - 2 * margin) * v / top; };
  auto polyline = [&](auto get, const char* color) {
    os << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto v = get(records[i]);
      if (!v) continue;
      if (!first) os << ' ';
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.2f,%.2f", x_at(i), y_at(*v));
      os << buf;
      first = false;
    }
    os << "\"/>\n";
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "  <line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
     << height - margin << "\" stroke=\"black\"/>\n";
  os << "  <line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
     << "\" stroke=\"black\"/>\n";
  polyline([](const ExperimentRecord& r) { return r.objective; }, "red");
  polyline([](const ExperimentRecord& r) { return r.abs_diff; }, "blue");
  for (std::size_t i = 0; i < records.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "[%g; %g]", records[i].eps1, records[i].eps2);
    os << "  <text x=\"" << x_at(i) << "\" y=\"" << height - margin + 18
       << "\" font-size=\"10\" text-anchor=\"middle\">" << buf << "</text>\n";
  }
  os << "  <text x=\"" << margin << "\" y=\"" << margin - 20 << "\" font-size=\"12\" fill=\"red\">eta + delta</text>\n";
  os << "  <text x=\"" << margin + 120 << "\" y=\"" << margin - 20
     << "\" font-size=\"12\" fill=\"blue\">|R_e - R_x|</text>\n";
  os << "</svg>\n";
}

}  // namespace beamalign
