#include "ltomo/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ltomo/errors.hpp"
#include "ltomo/io.hpp"

namespace ltomo {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::optional<double> to_double(const std::string& s) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) return std::nullopt;
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

}  // namespace

void ConfigSection::set(const std::string& key, std::string value, int line) {
  if (has(key)) throw ConfigError(file_, line, name_ + "." + key, "duplicate key (first set on line " + std::to_string(entries_[key].line) + ")");
  entries_[key] = {std::move(value), line};
}

void ConfigSection::fail(const std::string& key, const std::string& msg) const {
  const int line = has(key) ? entries_.at(key).line : line_;
  throw ConfigError(file_, line, name_ + "." + key, msg);
}

const ConfigSection::Entry& ConfigSection::entry(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) fail(key, "missing required field");
  return it->second;
}

std::string ConfigSection::str(const std::string& key, const std::string& def) const { return has(key) ? entry(key).value : def; }
std::string ConfigSection::str(const std::string& key) const { return entry(key).value; }

double ConfigSection::num(const std::string& key) const {
  const auto v = to_double(entry(key).value);
  if (!v) fail(key, "expected a number, got '" + entry(key).value + "'");
  return *v;
}
double ConfigSection::num(const std::string& key, double def) const { return has(key) ? num(key) : def; }

int ConfigSection::integer(const std::string& key, int def) const {
  if (!has(key)) return def;
  const double v = num(key);
  if (v != static_cast<int>(v)) fail(key, "expected an integer");
  return static_cast<int>(v);
}

bool ConfigSection::flag(const std::string& key, bool def) const {
  if (!has(key)) return def;
  const std::string v = entry(key).value;
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  fail(key, "expected on/off, got '" + v + "'");
}

std::vector<double> ConfigSection::list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split(entry(key).value, ',')) {
    const auto v = to_double(item);
    if (!v) fail(key, "expected a comma-separated list of numbers, bad item '" + item + "'");
    out.push_back(*v);
  }
  return out;
}
std::vector<double> ConfigSection::list(const std::string& key, std::vector<double> def) const {
  return has(key) ? list(key) : def;
}

std::complex<double> ConfigSection::complex(const std::string& key, std::complex<double> def) const {
  if (!has(key)) return def;
  const auto v = list(key);
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() != 2) fail(key, "expected 're' or 're, im'");
  return {v[0], v[1]};
}

Point ConfigSection::point(const std::string& key) const {
  const auto v = list(key);
  if (v.size() != 2) fail(key, "expected 'x, y'");
  return {v[0], v[1]};
}

void ConfigSection::only(const std::set<std::string>& allowed) const {
  for (const auto& [k, e] : entries_)
    if (!allowed.count(k)) throw ConfigError(file_, e.line, name_ + "." + k, "unknown field");
}

Config Config::parse(const std::string& text, const std::string& file) {
  Config c;
  c.file_ = file;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find_first_of("#;");
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(file, line, "", "unterminated section header");
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (name.empty()) throw ConfigError(file, line, "", "empty section name");
      if (name != "shape" && std::any_of(c.sections_.begin(), c.sections_.end(), [&](const auto& x) { return x.name() == name; }))
        throw ConfigError(file, line, name, "section appears twice (only [shape] may repeat)");
      c.sections_.emplace_back(file, name, line);
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(file, line, "", "expected 'key = value'");
    if (c.sections_.empty()) throw ConfigError(file, line, trim(s.substr(0, eq)), "field outside any [section]");
    const std::string key = trim(s.substr(0, eq));
    if (key.empty()) throw ConfigError(file, line, "", "empty key");
    c.sections_.back().set(key, trim(s.substr(eq + 1)), line);
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

const ConfigSection& Config::section(const std::string& name) const {
  for (const auto& s : sections_)
    if (s.name() == name) return s;
  return empty_;
}

std::vector<const ConfigSection*> Config::sections(const std::string& name) const {
  std::vector<const ConfigSection*> out;
  for (const auto& s : sections_)
    if (s.name() == name) out.push_back(&s);
  return out;
}

RunConfig RunConfig::from(const Config& c) {
  RunConfig r;

  const auto& g = c.section("geometry");
  g.only({"n0", "L", "q_alpha", "aperture"});
  r.n0 = g.integer("n0", r.n0);
  r.L = g.num("L", r.L);
  r.q_alpha = g.num("q_alpha", r.q_alpha);
  const std::string ap = g.str("aperture", "none");
  if (ap == "none" || ap == "off") r.aperture = Aperture::none;
  else if (ap == "box" || ap == "on") r.aperture = Aperture::box;
  else g.fail("aperture", "expected none or box");
  if (r.n0 < 4) g.fail("n0", "must be at least 4");
  if (!(r.L > 0)) g.fail("L", "must be positive");

  const auto& rc = c.section("recon");
  rc.only({"resolution"});
  r.resolution = rc.integer("resolution", r.resolution);
  if (r.resolution < 2) rc.fail("resolution", "must be at least 2");

  for (const ConfigSection* s : c.sections("shape")) {
    const std::string type = s->str("type");
    try {
      if (type == "disk") {
        s->only({"type", "center", "radius", "density"});
        r.phantom.add(Disk{s->point("center"), s->num("radius"), s->num("density", 1.0)});
      } else if (type == "rect" || type == "square") {
        s->only({"type", "center", "half_width", "half_height", "density"});
        const double hw = s->num("half_width");
        r.phantom.add(Rect{s->point("center"), hw, s->num("half_height", hw), s->num("density", 1.0)});
      } else {
        s->fail("type", "expected disk or rect");
      }
    } catch (const ArgumentError& e) {
      throw ConfigError(c.file(), s->line(), "shape", e.what());
    }
  }
  if (r.phantom.components().size() == 0) r.phantom.add(Disk{{2.0, 1.5}, 1.0, 1.0});

  const auto& e = c.section("edge");
  e.only({"component", "param", "h_min", "h_max", "samples"});
  const int comp = e.integer("component", 0);
  if (comp < 0 || static_cast<std::size_t>(comp) >= r.phantom.components().size()) e.fail("component", "no such shape");
  r.site_component = static_cast<std::size_t>(comp);
  r.site_param = e.num("param", std::numbers::sqrt2 * std::numbers::pi);
  r.h_min = e.num("h_min", r.h_min);
  r.h_max = e.num("h_max", r.h_max);
  r.samples = e.integer("samples", r.samples);
  if (!(r.h_max > r.h_min)) e.fail("h_max", "must exceed h_min");
  if (r.samples < 2) e.fail("samples", "must be at least 2");

  const auto& rp = c.section("ripple");
  rp.only({"n0_list", "roi"});
  if (rp.has("n0_list")) {
    r.n0_list.clear();
    for (double v : rp.list("n0_list")) {
      if (v != static_cast<int>(v) || v < 4) rp.fail("n0_list", "entries must be integers >= 4");
      r.n0_list.push_back(static_cast<int>(v));
    }
    if (!std::is_sorted(r.n0_list.begin(), r.n0_list.end())) rp.fail("n0_list", "must be ascending");
  }
  if (rp.has("roi")) {
    const auto v = rp.list("roi");
    if (v.size() != 4 || !(v[1] > v[0]) || !(v[3] > v[2])) rp.fail("roi", "expected 'x0, x1, y0, y1' with x1 > x0, y1 > y0");
    std::copy(v.begin(), v.end(), r.roi);
  }

  const auto& o = c.section("output");
  o.only({"dir"});
  r.out_dir = o.str("dir", r.out_dir);
  return r;
}

std::vector<std::string> RunConfig::describe() const {
  std::vector<std::string> out{
      "n0 = " + std::to_string(n0),
      "L = " + format_double(L),
      "q_alpha = " + format_double(q_alpha),
      std::string("aperture = ") + (aperture == Aperture::box ? "box" : "none"),
      "resolution = " + std::to_string(resolution),
  };
  for (std::size_t i = 0; i < phantom.components().size(); ++i) {
    const Shape& s = phantom.components()[i];
    if (const auto* d = std::get_if<Disk>(&s))
      out.push_back("shape " + std::to_string(i) + " = disk center (" + format_double(d->center.x) + ", " +
                    format_double(d->center.y) + ") radius " + format_double(d->radius) + " density " + format_double(d->density));
    else if (const auto* q = std::get_if<Rect>(&s))
      out.push_back("shape " + std::to_string(i) + " = rect center (" + format_double(q->center.x) + ", " +
                    format_double(q->center.y) + ") half " + format_double(q->half_w) + " x " + format_double(q->half_h) +
                    " density " + format_double(q->density));
  }
  out.push_back("edge = component " + std::to_string(site_component) + " param " + format_double(site_param) + " h [" +
                format_double(h_min) + ", " + format_double(h_max) + "] samples " + std::to_string(samples));
  std::string l = "n0_list =";
  for (int n : n0_list) l += " " + std::to_string(n);
  out.push_back(l);
  out.push_back("roi = " + format_double(roi[0]) + ", " + format_double(roi[1]) + ", " + format_double(roi[2]) + ", " +
                format_double(roi[3]));
  return out;
}

}  // namespace ltomo
