#include "bbp/config.hpp"

#include <fstream>
#include <sstream>

namespace bbp {

namespace {

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  std::ostringstream os;
  os << "config line " << line << ": " << what;
  throw ConfigError(os.str());
}

}  // namespace

std::vector<SearchConfig> parse_config(const std::string& text) {
  std::vector<SearchConfig> out;
  SearchConfig* cur = nullptr;
  std::istringstream is(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line = strip(raw);
    if (line.empty()) continue;
    if (line == "[search]") {
      out.emplace_back();
      cur = &out.back();
      continue;
    }
    if (line.front() == '[') fail(lineno, "unknown section " + line);
    if (!cur) fail(lineno, "key outside a [search] block");
    auto eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected key = value");
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    try {
      if (key == "label") {
        cur->label = value;
      } else if (key == "minpoly") {
        cur->r_spec.minpoly = Poly::from_string(value);
      } else if (key == "root_interval") {
        std::istringstream vs(value);
        std::string lo, hi;
        if (!(vs >> lo >> hi)) fail(lineno, "root_interval needs two rationals");
        cur->r_spec.interval = RationalInterval{parse_rational(lo), parse_rational(hi)};
      } else if (key == "r_rational") {
        cur->r_spec.rational = parse_rational(value);
      } else if (key == "b") {
        cur->b = std::stol(value);
      } else if (key == "N") {
        cur->N = parse_integer(value);
      } else if (key == "escalation") {
        std::istringstream vs(value);
        std::string tok;
        cur->escalation.clear();
        while (vs >> tok) cur->escalation.push_back(parse_integer(tok));
      } else if (key == "digits") {
        cur->digits = std::stol(value);
      } else if (key == "delta") {
        cur->delta = parse_rational(value);
      } else if (key == "targets") {
        cur->targets.clear();
        std::istringstream vs(value);
        std::string tok;
        while (vs >> tok) {
          if (tok != "pi") fail(lineno, "unknown target constant: " + tok);
          cur->targets.push_back(NamedConstant{});
        }
      } else if (key == "max_last") {
        cur->max_last = parse_integer(value);
      } else if (key == "max_count") {
        cur->max_count = static_cast<std::size_t>(std::stoul(value));
      } else if (key == "residual_threshold") {
        cur->residual_threshold = parse_rational(value);
      } else if (key == "verify_digits") {
        cur->verify_digits = std::stol(value);
      } else {
        fail(lineno, "unknown key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& ex) {
      fail(lineno, "bad value for '" + key + "': " + ex.what());
    }
  }
  if (out.empty()) throw ConfigError("config contains no [search] block");
  for (std::size_t i = 0; i < out.size(); ++i) {
    const SearchConfig& c = out[i];
    if (c.b <= 0) throw ConfigError("search block " + std::to_string(i + 1) + ": missing b");
    if (!c.r_spec.rational && !(c.r_spec.minpoly && c.r_spec.interval))
      throw ConfigError("search block " + std::to_string(i + 1) +
                        ": need r_rational or minpoly with root_interval");
    // rounding well-definedness: 10^-digits * N < 1/2
    long digits = c.auto_digits(c.N);
    Integer p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Rational scale_ratio(c.N, p10);
    scale_ratio.canonicalize();
    if (!(scale_ratio * 2 < 1))
      throw ConfigError("search block " + std::to_string(i + 1) +
                        ": digits too small for N (rounding ambiguous)");
  }
  return out;
}

std::vector<SearchConfig> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace bbp
