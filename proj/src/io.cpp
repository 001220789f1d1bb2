#include "robreg/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace robreg {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void parse_fail(const std::string& what, size_t line) {
  throw std::invalid_argument(what + " at line " + std::to_string(line));
}

}  // namespace

ConfigDoc ConfigDoc::parse_string(const std::string& text) {
  ConfigDoc doc;
  std::istringstream in(text);
  std::string line;
  std::string current;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') parse_fail("unterminated section header", lineno);
      current = trim(t.substr(1, t.size() - 2));
      if (current.empty()) parse_fail("empty section name", lineno);
      doc.set(current, "", "");  // ensure the section exists, even if empty
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos) parse_fail("expected key = value", lineno);
    std::string key = trim(t.substr(0, eq));
    if (key.empty()) parse_fail("empty key", lineno);
    if (current.empty()) parse_fail("key outside any [section]", lineno);
    doc.set(current, key, trim(t.substr(eq + 1)));
  }
  return doc;
}

ConfigDoc ConfigDoc::load(const std::string& path) {
  return parse_string(read_text_file(path));
}

std::string ConfigDoc::serialize() const {
  std::string out;
  for (const auto& [name, section] : sections_) {
    out += "[" + name + "]\n";
    for (const auto& [k, v] : section) {
      if (k.empty()) continue;
      out += k + " = " + v + "\n";
    }
    out += "\n";
  }
  return out;
}

void ConfigDoc::save(const std::string& path) const {
  write_text_file(path, serialize());
}

const std::string* ConfigDoc::find(const std::string& section,
                                   const std::string& key) const {
  for (const auto& [name, sec] : sections_) {
    if (name != section) continue;
    for (const auto& [k, v] : sec) {
      if (k == key) return &v;
    }
  }
  return nullptr;
}

void ConfigDoc::set(const std::string& section, const std::string& key,
                    const std::string& value) {
  for (auto& [name, sec] : sections_) {
    if (name != section) continue;
    if (!key.empty()) {
      for (auto& [k, v] : sec) {
        if (k == key) {
          v = value;
          return;
        }
      }
      sec.emplace_back(key, value);
    }
    return;
  }
  sections_.emplace_back(section, Section{});
  if (!key.empty()) sections_.back().second.emplace_back(key, value);
}

std::string ConfigDoc::get_string(const std::string& section,
                                  const std::string& key) const {
  const std::string* v = find(section, key);
  if (!v)
    throw std::invalid_argument("missing required key " + section + "." + key);
  return *v;
}

std::string ConfigDoc::get_string(const std::string& section,
                                  const std::string& key,
                                  const std::string& fallback) const {
  const std::string* v = find(section, key);
  return v ? *v : fallback;
}

long ConfigDoc::get_long(const std::string& section,
                         const std::string& key) const {
  const std::string s = get_string(section, key);
  long out = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || p != s.data() + s.size())
    throw std::invalid_argument("key " + section + "." + key +
                                " is not an integer: '" + s + "'");
  return out;
}

long ConfigDoc::get_long(const std::string& section, const std::string& key,
                         long fallback) const {
  return has(section, key) ? get_long(section, key) : fallback;
}

double ConfigDoc::get_double(const std::string& section,
                             const std::string& key) const {
  const std::string s = get_string(section, key);
  try {
    return parse_double(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("key " + section + "." + key +
                                " is not a number: '" + s + "'");
  }
}

double ConfigDoc::get_double(const std::string& section,
                             const std::string& key, double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

bool ConfigDoc::get_bool(const std::string& section, const std::string& key,
                         bool fallback) const {
  const std::string* v = find(section, key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1") return true;
  if (*v == "false" || *v == "0") return false;
  throw std::invalid_argument("key " + section + "." + key +
                              " is not a boolean: '" + *v + "'");
}

std::uint64_t ConfigDoc::get_u64(const std::string& section,
                                 const std::string& key,
                                 std::uint64_t fallback) const {
  const std::string* v = find(section, key);
  if (!v) return fallback;
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || p != v->data() + v->size())
    throw std::invalid_argument("key " + section + "." + key +
                                " is not an unsigned integer: '" + *v + "'");
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, p);
}

double parse_double(const std::string& s) {
  double out = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || p != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + s + "'");
  return out;
}

std::string format_vector(const Vec& v) {
  std::string out;
  for (long i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_double(v[i]);
  }
  return out;
}

Vec parse_vector(const std::string& s) {
  std::vector<double> vals;
  size_t pos = 0;
  const std::string t = trim(s);
  if (!t.empty()) {
    while (true) {
      size_t comma = t.find(',', pos);
      std::string tok = trim(t.substr(pos, comma - pos));
      vals.push_back(parse_double(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  Vec v(static_cast<long>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) v[static_cast<long>(i)] = vals[i];
  return v;
}

std::string format_ints(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> vals;
  const std::string t = trim(s);
  if (t.empty()) return vals;
  size_t pos = 0;
  while (true) {
    size_t comma = t.find(',', pos);
    std::string tok = trim(t.substr(pos, comma - pos));
    vals.push_back(static_cast<int>(std::stol(tok)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return vals;
}

void write_instance_csv(const std::string& path,
                        const RegressionInstance& instance) {
  instance.validate();
  std::string out;
  out.reserve(static_cast<size_t>(instance.n) * (instance.d + 2) * 12);
  out += "y";
  for (int j = 1; j <= instance.d; ++j) out += ",x_" + std::to_string(j);
  out += ",is_outlier\n";
  std::vector<char> is_out(static_cast<size_t>(instance.n), 0);
  if (instance.truth) {
    for (int i : instance.truth->outlier_set) is_out[i] = 1;
  }
  for (int i = 0; i < instance.n; ++i) {
    out += format_double(instance.y[i]);
    for (int j = 0; j < instance.d; ++j) {
      out += ",";
      out += format_double(instance.X(i, j));
    }
    out += is_out[i] ? ",1\n" : ",0\n";
  }
  write_text_file(path, out);
}

LoadedInstance read_instance_csv(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  size_t lineno = 0;

  if (!std::getline(in, line)) parse_fail("empty instance file", 1);
  ++lineno;
  std::vector<std::string> header;
  {
    std::stringstream hs(line);
    std::string tok;
    while (std::getline(hs, tok, ',')) header.push_back(trim(tok));
  }
  if (header.size() < 3 || header.front() != "y" || header.back() != "is_outlier")
    parse_fail("instance header must be y,x_1..x_d,is_outlier", lineno);
  const int d = static_cast<int>(header.size()) - 2;

  std::vector<double> ys;
  std::vector<double> xs;
  std::vector<int> flags;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::stringstream ls(line);
    std::string tok;
    std::vector<std::string> cells;
    while (std::getline(ls, tok, ',')) cells.push_back(trim(tok));
    if (cells.size() != header.size())
      parse_fail("expected " + std::to_string(header.size()) + " fields, got " +
                     std::to_string(cells.size()),
                 lineno);
    try {
      ys.push_back(parse_double(cells[0]));
      for (int j = 0; j < d; ++j) xs.push_back(parse_double(cells[1 + j]));
      flags.push_back(static_cast<int>(std::stol(cells.back())));
    } catch (const std::exception& e) {
      parse_fail(std::string("bad numeric field (") + e.what() + ")", lineno);
    }
  }
  const int n = static_cast<int>(ys.size());
  if (n == 0) parse_fail("instance has no data rows", lineno);

  LoadedInstance out;
  out.instance.n = n;
  out.instance.d = d;
  out.instance.y = Eigen::Map<Vec>(ys.data(), n);
  out.instance.X = Eigen::Map<
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      xs.data(), n, d);
  out.outlier_flags = std::move(flags);
  out.instance.validate();
  return out;
}

ConfigDoc instance_meta(const GeneratorSpec& spec, const GeneratedInstance& g) {
  ConfigDoc doc;
  spec_to_doc(spec, doc);
  const InstanceTruth& t = *g.instance.truth;
  doc.set("truth", "beta_star", format_vector(t.beta_star));
  doc.set("truth", "support", format_ints(t.support));
  doc.set("truth", "outlier_set", format_ints(t.outlier_set));
  doc.set("truth", "theta", format_vector(g.theta));
  return doc;
}

void apply_meta(const ConfigDoc& meta, RegressionInstance& instance) {
  InstanceTruth t;
  t.beta_star = parse_vector(meta.get_string("truth", "beta_star"));
  t.support = parse_ints(meta.get_string("truth", "support", ""));
  t.outlier_set = parse_ints(meta.get_string("truth", "outlier_set", ""));
  std::vector<char> is_out(static_cast<size_t>(instance.n), 0);
  for (int i : t.outlier_set) {
    if (i < 0 || i >= instance.n)
      throw std::invalid_argument("metadata outlier index out of range");
    is_out[i] = 1;
  }
  for (int i = 0; i < instance.n; ++i)
    if (!is_out[i]) t.inlier_set.push_back(i);
  instance.truth = std::move(t);
  instance.validate();
}

GeneratorSpec spec_from_doc(const ConfigDoc& doc, const std::string& section) {
  GeneratorSpec s;
  s.n = doc.get_long(section, "n");
  s.d = doc.get_long(section, "d");
  s.s = doc.get_long(section, "s");
  s.covariate_law =
      covariate_law_from_string(doc.get_string(section, "covariate_law", "gaussian"));
  s.covariate_df = doc.get_double(section, "covariate_df", 9);
  s.pareto_tail = doc.get_double(section, "pareto_tail", 9);
  s.rho = doc.get_double(section, "rho", 0);
  s.noise_law = noise_law_from_string(doc.get_string(section, "noise_law", "gaussian"));
  s.noise_df = doc.get_double(section, "noise_df", 3);
  s.beta_scale = doc.get_double(section, "beta_scale", 1);
  s.contamination =
      contamination_from_string(doc.get_string(section, "contamination", "none"));
  s.o = doc.get_long(section, "o", 0);
  s.magnitude = doc.get_double(section, "magnitude", 0);
  s.seed = doc.get_u64(section, "seed", 0);
  return s;
}

void spec_to_doc(const GeneratorSpec& spec, ConfigDoc& doc,
                 const std::string& section) {
  doc.set(section, "n", std::to_string(spec.n));
  doc.set(section, "d", std::to_string(spec.d));
  doc.set(section, "s", std::to_string(spec.s));
  doc.set(section, "covariate_law", to_string(spec.covariate_law));
  doc.set(section, "covariate_df", format_double(spec.covariate_df));
  doc.set(section, "pareto_tail", format_double(spec.pareto_tail));
  doc.set(section, "rho", format_double(spec.rho));
  doc.set(section, "noise_law", to_string(spec.noise_law));
  doc.set(section, "noise_df", format_double(spec.noise_df));
  doc.set(section, "beta_scale", format_double(spec.beta_scale));
  doc.set(section, "contamination", to_string(spec.contamination));
  doc.set(section, "o", std::to_string(spec.o));
  doc.set(section, "magnitude", format_double(spec.magnitude));
  doc.set(section, "seed", std::to_string(spec.seed));
}

bool file_exists(const std::string& path) {
  std::ifstream f(path);
  return f.good();
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write file: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace robreg
