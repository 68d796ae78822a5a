#pragma once

#include <complex>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ltomo/geometry.hpp"
#include "ltomo/phantom.hpp"

namespace ltomo {

// One "[name]" block of key = value lines. Accessors throw ConfigError
// pointing at the offending line.
class ConfigSection {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };

  ConfigSection(std::string file, std::string name, int line) : file_(std::move(file)), name_(std::move(name)), line_(line) {}

  const std::string& name() const { return name_; }
  int line() const { return line_; }
  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const std::map<std::string, Entry>& entries() const { return entries_; }
  void set(const std::string& key, std::string value, int line);

  std::string str(const std::string& key, const std::string& def) const;
  std::string str(const std::string& key) const;
  double num(const std::string& key, double def) const;
  double num(const std::string& key) const;
  int integer(const std::string& key, int def) const;
  bool flag(const std::string& key, bool def) const;
  std::vector<double> list(const std::string& key) const;
  std::vector<double> list(const std::string& key, std::vector<double> def) const;
  std::complex<double> complex(const std::string& key, std::complex<double> def) const;
  Point point(const std::string& key) const;

  // Rejects keys outside `allowed`.
  void only(const std::set<std::string>& allowed) const;
  [[noreturn]] void fail(const std::string& key, const std::string& msg) const;

 private:
  const Entry& entry(const std::string& key) const;

  std::string file_, name_;
  int line_;
  std::map<std::string, Entry> entries_;
};

class Config {
 public:
  static Config parse(const std::string& text, const std::string& file = "<config>");
  static Config load(const std::string& path);

  // First section with that name, or an empty stand-in.
  const ConfigSection& section(const std::string& name) const;
  std::vector<const ConfigSection*> sections(const std::string& name) const;
  const std::string& file() const { return file_; }

 private:
  std::string file_;
  std::vector<ConfigSection> sections_;
  ConfigSection empty_{"", "", 0};
};

// Resolved experiment settings shared by the CLI subcommands.
struct RunConfig {
  int n0 = 1000;
  double L = 5.0;
  double q_alpha = 1.4142135623730951;
  Aperture aperture = Aperture::none;
  int resolution = 1001;
  Phantom phantom;

  std::size_t site_component = 0;
  double site_param = 0.0;
  double h_min = -4.0, h_max = 4.0;
  int samples = 161;

  std::vector<int> n0_list{1000, 2500, 5000};
  double roi[4] = {-4.0, -1.0, -4.0, -2.0};

  std::string out_dir = "out";

  static RunConfig from(const Config& c);
  // key = value lines describing everything above, for output headers.
  std::vector<std::string> describe() const;
};

}  // namespace ltomo
