#include "jacobs/expectations.hpp"

#include "jacobs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace jacobs {

namespace {

constexpr const char* kDefault = R"(jacobs-expectations 1
version bands-2026-10-a
# name lo hi
band hl1922.ratio 0.95 1.05
band hli.ratio 0.95 1.05
band ingham.ratio 0.5 1.5
band theorem1.difference -2 2
band hli-functional.raw_over_x 0.8 1.2
band ingham-functional.raw_over_x 0.5 2
band determinant.ratio 0.7 1.3
band ladder.gap_ratio 0.85 1.15
band ladder.adjacent_gap_ratio 0.9 1.1
band ladder.increment_ratio 0.85 1.15
band ladder.adjacent_increment_ratio 0.9 1.1
)";

}  // namespace

double Band::half_width_around_one() const { return std::max(1.0 - lo, hi - 1.0); }

const Band& Expectations::band(const std::string& name) const {
  auto it = bands.find(name);
  if (it == bands.end()) throw UsageError("expectations " + version + " have no band " + name);
  return it->second;
}

const char* default_expectations_text() { return kDefault; }

Expectations default_expectations() { return parse_expectations(kDefault, "built-in"); }

Expectations parse_expectations(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  Expectations e;
  auto fail = [&](const std::string& why) {
    throw IntegrityError(origin + ":" + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (lineno == 1) {
      int fmt = 0;
      if (word != "jacobs-expectations" || !(ls >> fmt) || fmt != 1) fail("not an expectations file");
      continue;
    }
    if (word == "version") {
      if (!(ls >> e.version)) fail("missing version");
    } else if (word == "band") {
      std::string name;
      Band b;
      if (!(ls >> name >> b.lo >> b.hi) || !(b.lo <= b.hi)) fail("malformed band");
      e.bands[name] = b;
    } else {
      fail("unknown entry '" + word + "'");
    }
  }
  if (lineno == 0) fail("empty file");
  if (e.version.empty()) fail("missing version line");
  return e;
}

Expectations load_expectations(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read expectations file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_expectations(ss.str(), path);
}

}  // namespace jacobs
