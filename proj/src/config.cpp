#include "beamalign/config.hpp"

#include <charconv>
#include <fstream>
#include <string>

#include "beamalign/error.hpp"

namespace beamalign {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw DomainError("not a number: '" + std::string(s) + "'");
  return v;
}

std::uint64_t to_uint(std::string_view s) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw DomainError("not a non-negative integer: '" + std::string(s) + "'");
  return v;
}

bool to_bool(std::string_view s) {
  s = trim(s);
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw DomainError("not a boolean: '" + std::string(s) + "'");
}

}  // namespace

std::vector<EpsPair> parse_eps_pairs(std::string_view text) {
  std::vector<EpsPair> out;
  for (const auto item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2) throw DomainError("threshold pair must look like e1:e2, got '" + std::string(item) + "'");
    out.push_back({to_double(parts[0]), to_double(parts[1])});
  }
  return out;
}

std::vector<BeamAngles> parse_centers(std::string_view text) {
  std::vector<BeamAngles> out;
  for (const auto item : split(text, ';')) {
    const auto parts = split(item, ',');
    if (parts.size() != 2) throw DomainError("center must look like rx,tx, got '" + std::string(item) + "'");
    out.push_back({to_double(parts[0]), to_double(parts[1])});
  }
  return out;
}

void apply_setting(AlignmentConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "seed") cfg.seed = to_uint(value);
  else if (key == "n_tx") cfg.n_tx = to_uint(value);
  else if (key == "n_rx") cfg.n_rx = to_uint(value);
  else if (key == "alpha1") cfg.alphas.alpha1 = to_double(value);
  else if (key == "alpha2") cfg.alphas.alpha2 = to_double(value);
  else if (key == "alpha3") cfg.alphas.alpha3 = to_double(value);
  else if (key == "degree_cap") cfg.degree_cap = static_cast<int>(to_uint(value));
  else if (key == "center" || key == "centers") cfg.centers = parse_centers(value);
  else if (key == "eps_pairs") cfg.eps_pairs = parse_eps_pairs(value);
  else if (key == "grid_points") cfg.grid_points = to_uint(value);
  else if (key == "imag_tol") cfg.imag_tol = to_double(value);
  else if (key == "residual_tol") cfg.residual_tol = to_double(value);
  else if (key == "cluster_tol") cfg.cluster_tol = to_double(value);
  else if (key == "record_timing") cfg.record_timing = to_bool(value);
  else throw DomainError("unknown config key '" + std::string(key) + "'");
}

void load_config(AlignmentConfig& cfg, std::istream& is) {
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string_view v = line;
    if (const auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    v = trim(v);
    if (v.empty()) continue;
    const auto eq = v.find('=');
    if (eq == std::string_view::npos)
      throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
    try {
      apply_setting(cfg, v.substr(0, eq), v.substr(eq + 1));
    } catch (const DomainError& e) {
      throw DomainError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void load_config(AlignmentConfig& cfg, const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config " + path.string());
  load_config(cfg, is);
}

}  // namespace beamalign
