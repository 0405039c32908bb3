#pragma once

#include <map>
#include <string>

namespace jacobs {

struct Band {
  double lo = 0;
  double hi = 0;
  bool contains(double v) const { return v >= lo && v <= hi; }
  // Largest distance from 1 still inside the band.
  double half_width_around_one() const;
};

struct Expectations {
  std::string version;
  std::map<std::string, Band> bands;

  const Band& band(const std::string& name) const;
};

// The text shipped as data/expectations.txt.
const char* default_expectations_text();
Expectations default_expectations();
Expectations parse_expectations(const std::string& text, const std::string& origin);
Expectations load_expectations(const std::string& path);

}  // namespace jacobs
