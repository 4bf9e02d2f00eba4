#include "perco/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace perco {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

SigmaClass parse_query(const std::string& v, int line) {
  if (v == "mono") return SigmaClass::Mono;
  if (v == "poly_one_white") return SigmaClass::PolyOneWhite;
  if (v == "one_black") return SigmaClass::OneBlack;
  if (v == "one_white") return SigmaClass::OneWhite;
  throw ParseError(line, "unknown query class '" + v + "'");
}

template <typename T>
T parse_int(const std::string& v, int line) {
  T out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw ParseError(line, "malformed integer '" + v + "'");
  return out;
}

double parse_real(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw ParseError(line, "malformed real '" + v + "'");
    return d;
  } catch (const ParseError&) {
    throw;
  } catch (...) {
    throw ParseError(line, "malformed real '" + v + "'");
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool in_experiment = false;
  bool saw_query = false, saw_j = false;

  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t == "[experiment]") {
        in_experiment = true;
        continue;
      }
      throw ParseError(lineno, "unknown section " + t);
    }
    if (!in_experiment) throw ParseError(lineno, "key outside [experiment] section");
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key == "query") {
      cfg.query = parse_query(val, lineno);
      saw_query = true;
    } else if (key == "j") {
      cfg.j = parse_int<int>(val, lineno);
      saw_j = true;
    } else if (key == "n") {
      cfg.n = parse_int<int>(val, lineno);
    } else if (key == "schedule") {
      cfg.schedule.clear();
      std::istringstream vs(val);
      std::string item;
      while (std::getline(vs, item, ',')) cfg.schedule.push_back(parse_int<int>(trim(item), lineno));
      if (cfg.schedule.empty()) throw ParseError(lineno, "empty schedule");
    } else if (key == "samples") {
      cfg.samples = parse_int<std::uint64_t>(val, lineno);
      if (cfg.samples == 0) throw ParseError(lineno, "samples must be >= 1");
    } else if (key == "seed") {
      cfg.seed = parse_int<std::uint64_t>(val, lineno);
    } else if (key == "workers") {
      cfg.workers = parse_int<int>(val, lineno);
      if (cfg.workers < 1) throw ParseError(lineno, "workers must be >= 1");
    } else if (key == "out") {
      cfg.out_dir = val;
    } else if (key == "p_override") {
      double p = parse_real(val, lineno);
      if (!(p >= 0.0 && p <= 1.0)) throw ParseError(lineno, "p_override outside [0,1]");
      cfg.p_override = p;
    } else {
      throw ParseError(lineno, "unknown key '" + key + "'");
    }
  }

  if (!saw_query) throw ParseError(lineno, "missing key 'query'");
  if ((cfg.query == SigmaClass::OneBlack || cfg.query == SigmaClass::OneWhite)) {
    if (!saw_j) cfg.j = 1;
  } else if (!saw_j) {
    throw ParseError(lineno, "missing key 'j'");
  }
  if (cfg.n < 0) cfg.n = std::max(4, min_inner_radius(std::max(1, cfg.j)));
  if (cfg.schedule.empty()) cfg.schedule = {32, 64, 128, 256};
  for (std::size_t i = 0; i < cfg.schedule.size(); ++i) {
    if (cfg.schedule[i] <= cfg.n) throw ParseError(lineno, "schedule radius not above n");
    if (i > 0 && cfg.schedule[i] <= cfg.schedule[i - 1])
      throw ParseError(lineno, "schedule not strictly increasing");
  }
  // Query invariants, surfaced as parse errors.
  try {
    ArmQuery q{cfg.j, cfg.query, cfg.n, cfg.schedule.back()};
    q.validate();
  } catch (const std::exception& e) {
    throw ParseError(lineno, e.what());
  }
  return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "[experiment]\n";
  os << "query = " << sigma_class_name(cfg.query) << "\n";
  os << "j = " << cfg.j << "\n";
  os << "n = " << cfg.n << "\n";
  os << "schedule = ";
  for (std::size_t i = 0; i < cfg.schedule.size(); ++i)
    os << (i ? "," : "") << cfg.schedule[i];
  os << "\n";
  os << "samples = " << cfg.samples << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "workers = " << cfg.workers << "\n";
  os << "out = " << cfg.out_dir << "\n";
  if (cfg.p_override) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", *cfg.p_override);
    os << "p_override = " << buf << "\n";
  }
  return os.str();
}

}  // namespace perco
