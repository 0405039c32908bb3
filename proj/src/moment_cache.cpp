#include "jacobs/errors.hpp"
#include "jacobs/moments.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace jacobs::moments {

namespace {

constexpr const char* kMagic = "jacobs-moment-cache 1";

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t fnv1a(const std::string& text, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

std::map<std::string, std::string> fields(const std::string& line, std::size_t from) {
  std::map<std::string, std::string> out;
  std::istringstream is(line.substr(from));
  std::string tok;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw IntegrityError("malformed header token '" + tok + "'");
    out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw IntegrityError("bad number for " + what + ": '" + s + "'");
  return v;
}

long long parse_int(const std::string& s, const std::string& what) {
  char* end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) throw IntegrityError("bad integer for " + what);
  return v;
}

std::string need(const std::map<std::string, std::string>& f, const std::string& key) {
  auto it = f.find(key);
  if (it == f.end()) throw IntegrityError("missing header field '" + key + "'");
  return it->second;
}

}  // namespace

void cache_save(const MomentCache& cache, const std::string& path) {
  std::ostringstream os;
  os << kMagic << "\n";
  os << "version " << cache.settings().version() << "\n";
  os << "series " << cache.all_series().size() << "\n";
  for (const auto& [key, s] : cache.all_series()) {
    os << "begin sigma=" << g17(key.sigma) << " power=" << key.power << " grid=" << key.grid
       << " base=" << g17(s.base) << " step=" << g17(s.step) << " tol=" << g17(s.tol_density)
       << " version=" << s.version << " count=" << s.cumulative.size() << "\n";
    std::string body;
    for (std::size_t i = 0; i < s.cumulative.size(); ++i)
      body += g17(s.abscissa(i)) + "," + g17(s.cumulative[i]) + "\n";
    os << body << "end checksum=" << hex64(fnv1a(body)) << "\n";
  }

  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write cache file " + tmp.string());
    out << os.str();
    out.flush();
    if (!out) throw IoError("short write on cache file " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw IoError("cannot move cache file into place: " + ec.message());
}

MomentCache cache_load(const std::string& path, const CacheSettings& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read cache file " + path);
  std::string line;
  if (!std::getline(in, line) || line != kMagic) throw IntegrityError("not a moment cache file: " + path);
  if (!std::getline(in, line) || line.rfind("version ", 0) != 0) throw IntegrityError("missing version line");
  std::string version = line.substr(8);
  if (version != expected.version())
    throw CompatibilityError("cache built by evaluator '" + version + "', expected '" + expected.version() + "'");
  if (!std::getline(in, line) || line.rfind("series ", 0) != 0) throw IntegrityError("missing series count");
  long long count = parse_int(line.substr(7), "series count");
  if (count < 0) throw IntegrityError("negative series count");

  MomentCache cache(expected);
  for (long long k = 0; k < count; ++k) {
    if (!std::getline(in, line) || line.rfind("begin ", 0) != 0) throw IntegrityError("missing series header");
    auto f = fields(line, 6);
    Series s;
    s.key.sigma = parse_double(need(f, "sigma"), "sigma");
    s.key.power = static_cast<int>(parse_int(need(f, "power"), "power"));
    s.key.grid = need(f, "grid");
    s.base = parse_double(need(f, "base"), "base");
    s.step = parse_double(need(f, "step"), "step");
    s.tol_density = parse_double(need(f, "tol"), "tol");
    s.version = need(f, "version");
    if (s.version != expected.version())
      throw CompatibilityError("series built by evaluator '" + s.version + "'");
    if (!(s.step > 0) || !(s.tol_density > 0)) throw IntegrityError("bad series step or tolerance");
    if (s.key.power != 2 && s.key.power != 4) throw IntegrityError("bad series power");
    long long n = parse_int(need(f, "count"), "count");
    if (n < 0) throw IntegrityError("negative record count");
    std::string body;
    for (long long i = 0; i < n; ++i) {
      if (!std::getline(in, line)) throw IntegrityError("truncated series records");
      body += line + "\n";
      auto comma = line.find(',');
      if (comma == std::string::npos) throw IntegrityError("malformed record '" + line + "'");
      double x = parse_double(line.substr(0, comma), "abscissa");
      double c = parse_double(line.substr(comma + 1), "cumulative");
      if (x != s.abscissa(static_cast<std::size_t>(i))) throw IntegrityError("record abscissa off the grid");
      if (!s.cumulative.empty() && c < s.cumulative.back())
        throw IntegrityError("cumulative values decrease at t=" + g17(x));
      if (c < 0) throw IntegrityError("negative cumulative value");
      s.cumulative.push_back(c);
    }
    if (!std::getline(in, line) || line.rfind("end ", 0) != 0) throw IntegrityError("missing series trailer");
    auto tf = fields(line, 4);
    if (need(tf, "checksum") != hex64(fnv1a(body))) throw IntegrityError("checksum mismatch in cache file");
    cache.insert_series(std::move(s));
  }
  if (std::getline(in, line) && !line.empty()) throw IntegrityError("trailing data in cache file");
  return cache;
}

}  // namespace jacobs::moments
