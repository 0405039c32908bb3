#include "jacobs/cli.hpp"

#include "jacobs/config.hpp"
#include "jacobs/constants.hpp"
#include "jacobs/expectations.hpp"
#include "jacobs/fermat.hpp"
#include "jacobs/functionals.hpp"
#include "jacobs/ladder.hpp"
#include "jacobs/moments.hpp"
#include "jacobs/table.hpp"
#include "jacobs/zeta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>

namespace jacobs::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr const char* kToolVersion = "1.0.0";

// Advisory lock held while a command may write the cache.
class CacheLock {
 public:
  explicit CacheLock(const std::string& cache_path) : path_(cache_path + ".lock") {
    fs::path parent = fs::path(cache_path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    fd_ = ::open(path_.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ < 0) throw IoError("cannot open lock file " + path_);
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
      ::close(fd_);
      throw IoError("cache " + cache_path + " is locked by another process");
    }
  }
  ~CacheLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  CacheLock(const CacheLock&) = delete;
  CacheLock& operator=(const CacheLock&) = delete;

 private:
  std::string path_;
  int fd_ = -1;
};

void write_file(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + tmp.string());
    f << text;
    f.flush();
    if (!f) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

struct Session {
  ExperimentConfig cfg;
  Expectations expect;
  std::vector<std::string> argv;
  std::ostream& out;

  std::unique_ptr<CacheLock> lock;
  std::unique_ptr<moments::MomentCache> cache;
  std::size_t saved_checkpoints = 0;

  json calls = json::array();
  json summary = json::object();
  std::vector<std::string> outputs;

  Session(ExperimentConfig c, Expectations e, std::vector<std::string> a, std::ostream& o)
      : cfg(std::move(c)), expect(std::move(e)), argv(std::move(a)), out(o) {}

  moments::MomentCache& open_cache() {
    if (cache) return *cache;
    lock = std::make_unique<CacheLock>(cfg.cache_path);
    if (fs::exists(cfg.cache_path))
      cache = std::make_unique<moments::MomentCache>(moments::cache_load(cfg.cache_path, cfg.cache_settings()));
    else
      cache = std::make_unique<moments::MomentCache>(cfg.cache_settings());
    saved_checkpoints = cache->checkpoint_count();
    return *cache;
  }

  void save_cache(bool force = false) {
    if (!cache) return;
    if (!force && cache->checkpoint_count() == saved_checkpoints) return;
    moments::cache_save(*cache, cfg.cache_path);
    saved_checkpoints = cache->checkpoint_count();
  }

  template <class F>
  auto counted(const std::string& name, F&& f) {
    moments::MomentCache& c = open_cache();
    long long before = c.total_evals();
    try {
      auto r = f();
      calls.push_back({{"call", name}, {"n_evals", c.total_evals() - before}});
      return r;
    } catch (...) {
      calls.push_back({{"call", name}, {"n_evals", c.total_evals() - before}, {"failed", true}});
      throw;
    }
  }

  std::string render(const Table& t) const {
    return cfg.format == OutputFormat::csv ? t.to_csv() : t.to_json();
  }

  void emit(const std::string& stem, const Table& t) {
    fs::create_directories(cfg.out_dir);
    fs::path p = fs::path(cfg.out_dir) / (stem + (cfg.format == OutputFormat::csv ? ".csv" : ".json"));
    write_file(p, render(t));
    outputs.push_back(p.string());
  }

  void write_manifest(const std::string& command, double wall, const std::string& status,
                      const std::string& message) {
    json m;
    m["command"] = command;
    m["argv"] = argv;
    json c = json::object();
    for (const auto& [k, v] : cfg.entries()) c[k] = v;
    m["config"] = c;
    m["versions"] = {{"jladder", kToolVersion},
                     {"evaluator", cfg.cache_settings().version()},
                     {"expectations", expect.version}};
    m["wall_time_s"] = wall;
    m["evaluations"] = calls;
    m["outputs"] = outputs;
    m["summary"] = summary;
    m["status"] = status;
    if (!message.empty()) m["message"] = message;
    fs::create_directories(cfg.out_dir);
    write_file(fs::path(cfg.out_dir) / "manifest.json", m.dump(2) + "\n");
  }

  // Runs body, then saves the cache and writes the manifest, also on failure.
  template <class F>
  void with_manifest(const std::string& command, F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    auto wall = [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    try {
      body();
      save_cache();
    } catch (const Error& e) {
      try {
        save_cache();
      } catch (...) {
      }
      write_manifest(command, wall(), error_kind_name(e.kind()), e.what());
      throw;
    } catch (const std::exception& e) {
      write_manifest(command, wall(), "internal", e.what());
      throw;
    }
    write_manifest(command, wall(), "ok", "");
  }
};

std::string num(double v) { return format_double(v); }

void require_grid(const std::vector<double>& g, const char* name) {
  if (g.empty()) throw UsageError(std::string("empty ") + name + " grid");
  for (double v : g)
    if (!std::isfinite(v)) throw UsageError(std::string("non-finite value in ") + name + " grid");
}

// CLI11 reads "" as a zero entry; an empty item means the grid was left empty.
void require_no_blank(const CLI::Option* o) {
  for (const auto& v : o->results())
    if (v.find_first_not_of(" \t") == std::string::npos) throw UsageError("empty " + o->get_name() + " grid");
}

void require_increasing(const std::vector<double>& g, const char* name) {
  require_grid(g, name);
  for (std::size_t i = 1; i < g.size(); ++i)
    if (!(g[i] > g[i - 1])) throw UsageError(std::string(name) + " grid must be strictly increasing");
}

// ---- zeta ------------------------------------------------------------------

void cmd_zeta(Session& s, double sigma, double t, std::optional<double> tol) {
  sf::ZetaConfig z = s.cfg.zeta_config();
  if (!std::isfinite(t)) throw DomainError("t must be finite");
  sf::ZetaValue v = sf::zeta_point({sigma, std::abs(t)}, tol ? *tol : z.default_tol, z);
  if (t < 0) v.im = -v.im;
  s.out << "sigma " << num(sigma) << "\n"
        << "t " << num(t) << "\n"
        << "re " << num(v.re) << "\n"
        << "im " << num(v.im) << "\n"
        << "abs_sq " << num(v.abs_sq) << "\n"
        << "err_bound " << num(v.err_bound) << "\n"
        << "method " << (v.method == sf::ZetaMethod::euler_maclaurin ? "euler-maclaurin" : "riemann-siegel")
        << "\n"
        << "terms " << v.terms << "\n";
}

// ---- moment ----------------------------------------------------------------

void cmd_moment(Session& s, double lower, double upper, double sigma, int power, std::optional<double> tol) {
  moments::MomentCache& cache = s.open_cache();
  moments::MomentSpec spec{lower, upper, sigma, power,
                           tol ? *tol : moments::default_tol(cache, power, lower, upper)};
  moments::validate(spec, cache.settings().zeta);
  moments::MomentResult r;
  try {
    r = moments::moment_integral(spec, cache);
  } catch (...) {
    s.save_cache();
    throw;
  }
  s.save_cache();
  Table t;
  t.columns = {"lower", "upper", "sigma", "power", "value", "err_estimate", "tol", "n_evals", "cache_hits"};
  t.add_row({lower, upper, sigma, static_cast<long long>(power), r.value, r.err_estimate, spec.tol, r.n_evals,
             r.cache_hits});
  s.out << s.render(t);
}

// ---- ladder ----------------------------------------------------------------

void cmd_ladder(Session& s, double T, int k, bool forward) {
  ladder::LadderConfig lc = s.cfg.ladder_config();
  ladder::validate(lc);
  if (k < 0 || k > lc.k_cap) throw UsageError("k must lie in [0, " + std::to_string(lc.k_cap) + "]");
  if (!std::isfinite(T)) throw DomainError("T must be finite");
  if (T < lc.T0) throw RangeError("T=" + num(T) + " is below T0=" + num(lc.T0), 0);

  s.with_manifest("ladder", [&] {
    moments::MomentCache& cache = s.open_cache();
    if (forward) {
      auto seq = s.counted("forward_iterations", [&] { return ladder::forward_iterations(T, k, lc, cache); });
      Table t;
      t.columns = {"r", "phi^r(t)"};
      for (std::size_t r = 0; r < seq.size(); ++r) t.add_row({static_cast<long long>(r), seq[r]});
      s.emit("ladder_forward", t);
      s.out << s.render(t);
      return;
    }
    auto seq = s.counted("reverse_iterations", [&] { return ladder::reverse_iterations(T, k, lc, cache); });
    Table st;
    st.columns = {"r", "T^r"};
    for (int r = 0; r <= seq.k(); ++r) st.add_row({static_cast<long long>(r), seq.iterates[r]});
    s.emit("ladder_sequence", st);
    if (k == 0) {
      s.out << "r=0 T^0=" << num(T) << "\n";
      return;
    }
    const Band& gap = s.expect.band("ladder.gap_ratio");
    const Band& adj = s.expect.band("ladder.adjacent_gap_ratio");
    Table sp = ladder::spacing_report(seq);
    sp.columns.push_back("in_band");
    for (std::size_t i = 0; i < sp.rows.size(); ++i) {
      bool ok = gap.contains(sp.number(i, "ratio"));
      double g = sp.number(i, "gap_ratio");
      if (!std::isnan(g)) ok = ok && adj.contains(g);
      sp.rows[i].push_back(ok);
    }
    auto inc = s.counted("increment_energy_report", [&] { return ladder::increment_energy_report(seq, cache); });
    const Band& ib = s.expect.band("ladder.increment_ratio");
    const Band& iadj = s.expect.band("ladder.adjacent_increment_ratio");
    inc.table.columns.push_back("in_band");
    for (std::size_t i = 0; i < inc.table.rows.size(); ++i) {
      bool ok = ib.contains(inc.table.number(i, "ratio"));
      double g = inc.table.number(i, "increment_ratio");
      if (!std::isnan(g)) ok = ok && iadj.contains(g);
      inc.table.rows[i].push_back(ok);
    }
    Table part;
    part.columns = {"sum_increments", "full_integral", "gap", "tol", "holds"};
    part.add_row({inc.sum_increments, inc.full_integral, inc.partition_gap, inc.partition_tol, inc.partition_holds});
    s.emit("ladder_spacing", sp);
    s.emit("ladder_increments", inc.table);
    s.emit("ladder_partition", part);
    s.summary["partition_holds"] = inc.partition_holds;
    s.out << s.render(st) << "\n" << s.render(sp) << "\n" << s.render(inc.table) << "\n" << s.render(part);
  });
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string target;
  std::vector<double> T;
  std::vector<double> sigma;
  std::vector<int> r;
  std::vector<double> tau;
  double x = 1;
  bool T_set = false, sigma_set = false, r_set = false, tau_set = false;
};

bool trend_ok(double first_dev, double last_dev) { return std::abs(last_dev) <= std::abs(first_dev); }

void verify_hl1922(Session& s, const VerifyArgs& a, moments::MomentCache& cache) {
  const Band& b = s.expect.band("hl1922.ratio");
  Table t;
  t.columns = {"sigma", "T", "J1(T;sigma)", "zeta(2sigma)T", "ratio", "deviation", "in_band"};
  json trends = json::object();
  for (double sigma : a.sigma) {
    std::vector<double> devs;
    for (double T : a.T) {
      auto m = s.counted("strip_second_moment sigma=" + num(sigma) + " T=" + num(T),
                         [&] { return moments::strip_second_moment(T, sigma, cache); });
      double ref = moments::asymptotic_strip(T, sigma, cache.settings().zeta);
      double ratio = m.value / ref;
      devs.push_back(ratio - 1);
      t.add_row({sigma, T, m.value, ref, ratio, ratio - 1, b.contains(ratio)});
    }
    trends[num(sigma)] = trend_ok(devs.front(), devs.back());
  }
  s.summary["trend"] = trends;
  s.emit("hl1922", t);
  s.out << s.render(t);
}

void verify_hli(Session& s, const VerifyArgs& a, moments::MomentCache& cache) {
  const Band& b = s.expect.band("hli.ratio");
  Table t;
  t.columns = {"T", "J(T)", "TlnT-(1+ln2pi-2c)T", "ratio", "deviation", "in_band"};
  std::vector<double> devs;
  for (double T : a.T) {
    auto m = s.counted("hardy_littlewood_J T=" + num(T), [&] { return moments::hardy_littlewood_J(T, cache); });
    double ref = moments::asymptotic_J(T);
    double ratio = m.value / ref;
    devs.push_back(ratio - 1);
    t.add_row({T, m.value, ref, ratio, ratio - 1, b.contains(ratio)});
  }
  s.summary["trend"] = trend_ok(devs.front(), devs.back());
  s.emit("hli", t);
  s.out << s.render(t);
}

void verify_ingham(Session& s, const VerifyArgs& a, moments::MomentCache& cache) {
  const Band& b = s.expect.band("ingham.ratio");
  Table t;
  t.columns = {"T", "M4(T)", "TlnT^4/(2pi^2)", "ratio", "deviation", "in_band"};
  std::vector<double> devs;
  for (double T : a.T) {
    auto m = s.counted("fourth_moment T=" + num(T), [&] { return moments::fourth_moment(T, cache); });
    double ref = moments::asymptotic_fourth(T);
    double ratio = m.value / ref;
    devs.push_back(ratio - 1);
    t.add_row({T, m.value, ref, ratio, ratio - 1, b.contains(ratio)});
  }
  s.summary["trend"] = trend_ok(devs.front(), devs.back());
  s.emit("ingham", t);
  s.out << s.render(t);
}

void verify_theorem1(Session& s, const VerifyArgs& a, moments::MomentCache& cache) {
  const Band& b = s.expect.band("theorem1.difference");
  ladder::LadderConfig lc = s.cfg.ladder_config();
  Table t;
  t.columns = {"T", "r", "sigma", "T^(r-1)", "T^r", "line", "strip", "ratio", "ln(T^(r-1))/zeta(2sigma)",
               "difference", "in_band"};
  for (double T : a.T)
    for (int r : a.r)
      for (double sigma : a.sigma) {
        auto v = s.counted("ratio_interaction T=" + num(T) + " r=" + std::to_string(r) + " sigma=" + num(sigma),
                           [&] { return functionals::ratio_interaction(T, r, sigma, lc, cache); });
        t.add_row({T, static_cast<long long>(r), sigma, v.T_prev, v.T_r, v.line, v.strip, v.ratio, v.reference,
                   v.difference(), b.contains(v.difference())});
      }
  s.emit("theorem1", t);
  s.out << s.render(t);
}

void verify_functional(Session& s, const VerifyArgs& a, moments::MomentCache& cache, functionals::Kind kind) {
  const std::string name = std::string(functionals::kind_name(kind)) + "-functional";
  const Band& b = s.expect.band(name + ".raw_over_x");
  ladder::LadderConfig lc = s.cfg.ladder_config();
  double sigma = a.sigma.front();
  auto sweep = s.counted("convergence_sweep " + name + " x=" + num(a.x) + " sigma=" + num(sigma),
                         [&] { return functionals::convergence_sweep(kind, a.x, sigma, a.tau, lc, cache); });
  Table t = sweep.to_table();
  t.columns.push_back("in_band");
  for (const auto& r : sweep.rows) {
    Cell c;
    if (r.estimate) c = b.contains(r.estimate->raw_value / a.x);
    t.rows[&r - sweep.rows.data()].push_back(c);
  }
  s.summary["trend"] = sweep.trend;
  s.emit(name, t);
  s.out << s.render(t) << "trend=" << (sweep.trend ? "true" : "false") << "\n";
}

void verify_determinant(Session& s, const VerifyArgs& a, moments::MomentCache& cache) {
  const Band& b = s.expect.band("determinant.ratio");
  ladder::LadderConfig lc = s.cfg.ladder_config();
  Table t;
  t.columns = {"T", "sigma", "T^1", "line[T,T^1]", "strip[T,T^1]", "line[1,T]", "strip[1,T]", "lhs", "rhs",
               "lhs/rhs", "in_band"};
  for (double sigma : a.sigma)
    for (double T : a.T) {
      auto d = s.counted("determinant_interaction T=" + num(T) + " sigma=" + num(sigma),
                         [&] { return functionals::determinant_interaction(T, sigma, lc, cache); });
      t.add_row({T, sigma, d.T1, d.line_ladder, d.strip_ladder, d.line_base, d.strip_base, d.lhs, d.rhs, d.ratio(),
                 b.contains(d.ratio())});
    }
  s.emit("determinant", t);
  s.out << s.render(t);
}

void cmd_verify(Session& s, VerifyArgs a) {
  static const std::vector<std::string> targets = {"hl1922",         "hli",          "ingham",
                                                   "theorem1",       "hli-functional", "ingham-functional",
                                                   "determinant"};
  if (std::find(targets.begin(), targets.end(), a.target) == targets.end())
    throw UsageError("unknown verify target '" + a.target + "'");
  auto dflt = [](auto& v, bool set, auto def) {
    if (!set) v = def;
  };
  using VD = std::vector<double>;
  if (a.target == "hl1922") {
    dflt(a.sigma, a.sigma_set, VD{0.75, 1, 2});
    dflt(a.T, a.T_set, VD{1000, 2000, 8000});
  } else if (a.target == "hli") {
    dflt(a.T, a.T_set, VD{2000, 10000});
  } else if (a.target == "ingham") {
    dflt(a.T, a.T_set, VD{2000, 5000});
  } else if (a.target == "theorem1") {
    dflt(a.T, a.T_set, VD{1000, 10000});
    dflt(a.sigma, a.sigma_set, VD{0.75, 1});
    dflt(a.r, a.r_set, std::vector<int>{1, 2});
  } else if (a.target == "hli-functional") {
    dflt(a.sigma, a.sigma_set, VD{1});
    dflt(a.tau, a.tau_set, VD{500, 1000, 2000, 5000});
  } else if (a.target == "ingham-functional") {
    dflt(a.sigma, a.sigma_set, VD{1});
    dflt(a.tau, a.tau_set, VD{500, 1000, 2000});
  } else if (a.target == "determinant") {
    dflt(a.T, a.T_set, VD{10000});
    dflt(a.sigma, a.sigma_set, VD{1});
  }
  if (a.target == "hli-functional" || a.target == "ingham-functional") {
    require_increasing(a.tau, "tau");
    require_grid(a.sigma, "sigma");
    if (!(a.x > 0) || !std::isfinite(a.x)) throw UsageError("x must be positive");
  } else {
    require_increasing(a.T, "T");
    if (a.target != "hli" && a.target != "ingham") require_grid(a.sigma, "sigma");
    if (a.target == "theorem1" && a.r.empty()) throw UsageError("empty r grid");
  }

  s.with_manifest("verify " + a.target, [&] {
    moments::MomentCache& cache = s.open_cache();
    if (a.target == "hl1922") verify_hl1922(s, a, cache);
    else if (a.target == "hli") verify_hli(s, a, cache);
    else if (a.target == "ingham") verify_ingham(s, a, cache);
    else if (a.target == "theorem1") verify_theorem1(s, a, cache);
    else if (a.target == "hli-functional") verify_functional(s, a, cache, functionals::Kind::hli);
    else if (a.target == "ingham-functional") verify_functional(s, a, cache, functionals::Kind::ingham);
    else verify_determinant(s, a, cache);
  });
}

// ---- fermat ----------------------------------------------------------------

void cmd_fermat(Session& s, const std::string& x, const std::string& y, const std::string& z, long long n,
                double sigma, std::vector<double> taus, const std::string& kind_s) {
  functionals::Kind kind;
  if (kind_s == "hli") kind = functionals::Kind::hli;
  else if (kind_s == "ingham") kind = functionals::Kind::ingham;
  else throw UsageError("kind must be hli or ingham");
  FermatRational fr = FermatRational::parse(x, y, z, n);
  require_increasing(taus, "tau");
  const double band =
      s.expect.band(std::string(functionals::kind_name(kind)) + "-functional.raw_over_x").half_width_around_one();
  ladder::LadderConfig lc = s.cfg.ladder_config();

  s.with_manifest("fermat", [&] {
    moments::MomentCache& cache = s.open_cache();
    Table t;
    t.columns = {"tau", "T", "T^1", "raw", "target", "deviation", "band", "distinguishable", "verdict",
                 "error_kind", "error"};
    std::string last_verdict;
    for (double tau : taus) {
      try {
        auto v = s.counted("fermat_condition tau=" + num(tau),
                           [&] { return functionals::fermat_condition(kind, fr, sigma, tau, band, lc, cache); });
        const auto& e = v.estimate;
        t.add_row({tau, e.T, e.T1, e.raw_value, e.target, e.deviation, band, v.distinguishable, v.verdict, Cell{},
                   Cell{}});
        last_verdict = v.verdict;
      } catch (const Error& e) {
        t.add_row({tau, Cell{}, Cell{}, Cell{}, fr.approx(), Cell{}, band, Cell{}, Cell{},
                   std::string(error_kind_name(e.kind())), std::string(e.what())});
      }
    }
    s.summary["exact_value"] = fr.exact_string();
    s.summary["exact_equals_one"] = fr.equals_one();
    s.summary["fermat_class"] = fr.fermat_class();
    s.summary["verdict"] = last_verdict;
    s.summary["verdict_kind"] = "heuristic";
    s.emit("fermat", t);
    s.out << "exact_value " << fr.exact_string() << "\n"
          << "exact_equals_one " << (fr.equals_one() ? "true" : "false") << "\n"
          << "fermat_class " << (fr.fermat_class() ? "true" : "false") << "\n"
          << s.render(t) << "verdict (heuristic, largest tau): " << last_verdict << "\n";
  });
}

// ---- cache -----------------------------------------------------------------

void print_stats(Session& s, const moments::MomentCache& c) {
  s.out << "version " << c.settings().version() << "\n"
        << "series " << c.all_series().size() << "\n"
        << "checkpoints " << c.checkpoint_count() << "\n"
        << "max_abscissa " << num(c.max_abscissa()) << "\n";
  for (const auto& [k, ser] : c.all_series())
    s.out << "series sigma=" << num(k.sigma) << " power=" << k.power << " grid=" << k.grid
          << " count=" << ser.cumulative.size() << " max=" << num(ser.max_abscissa()) << "\n";
}

void cmd_cache_init(Session& s, bool force) {
  s.lock = std::make_unique<CacheLock>(s.cfg.cache_path);
  if (fs::exists(s.cfg.cache_path) && !force)
    throw UsageError("cache " + s.cfg.cache_path + " exists; pass --force to replace it");
  moments::cache_save(moments::MomentCache(s.cfg.cache_settings()), s.cfg.cache_path);
  s.out << "initialized " << s.cfg.cache_path << "\n";
}

void cmd_cache_stats(Session& s) {
  if (!fs::exists(s.cfg.cache_path)) throw IoError("no cache at " + s.cfg.cache_path);
  moments::MomentCache c = moments::cache_load(s.cfg.cache_path, s.cfg.cache_settings());
  print_stats(s, c);
}

void cmd_cache_extend(Session& s, double to, const std::vector<double>& sigmas, int power) {
  if (!std::isfinite(to) || to < 0) throw UsageError("--to must be a finite non-negative abscissa");
  require_grid(sigmas, "sigma");
  moments::MomentCache& c = s.open_cache();
  try {
    for (double sigma : sigmas) moments::extend(c, sigma, power, to);
  } catch (...) {
    s.save_cache();
    throw;
  }
  s.save_cache();
  print_stats(s, c);
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage: return 2;
    case ErrorKind::domain: return 3;
    case ErrorKind::precision: return 4;
    case ErrorKind::budget: return 5;
    case ErrorKind::solver: return 6;
    case ErrorKind::integrity: return 7;
    case ErrorKind::compatibility: return 8;
    case ErrorKind::range: return 9;
    case ErrorKind::io: return 10;
  }
  return 1;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jacob's ladder reverse iterations and zeta moment experiments", "jladder"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  std::vector<std::string> sets;
  std::optional<std::string> cache_path, out_dir, format, mode, expectations;
  std::optional<double> solver_tol, T0, eps_min;
  std::optional<long long> max_evals;
  app.add_option("--config", config_file, "key=value configuration file");
  app.add_option("--set", sets, "override one config key (key=value)");
  app.add_option("--cache", cache_path, "moment cache file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--format", format, "csv or json");
  app.add_option("--mode", mode, "ladder mode: exact or asymptotic");
  app.add_option("--solver-tol", solver_tol, "relative ladder solver tolerance");
  app.add_option("--T0", T0, "smallest admissible ladder base point");
  app.add_option("--eps-min", eps_min, "strip floor: sigma >= 1/2 + eps_min");
  app.add_option("--max-evals", max_evals, "integrand evaluation budget per call");
  app.add_option("--expectations", expectations, "band file (default: built-in)");

  double z_sigma = 0, z_t = 0;
  std::optional<double> z_tol;
  auto* zeta = app.add_subcommand("zeta", "evaluate zeta(sigma + i t)");
  zeta->add_option("--sigma", z_sigma)->required();
  zeta->add_option("--t", z_t)->required()->allow_extra_args(false);
  zeta->add_option("--tol", z_tol);

  double m_lower = 0, m_upper = 0, m_sigma = 0.5;
  int m_power = 2;
  std::optional<double> m_tol;
  auto* moment = app.add_subcommand("moment", "integral of |zeta(sigma+it)|^power over [lower, upper]");
  moment->add_option("lower", m_lower)->required();
  moment->add_option("upper", m_upper)->required();
  moment->add_option("sigma", m_sigma)->required();
  moment->add_option("power", m_power)->required();
  moment->add_option("--tol", m_tol);

  double l_T = 0;
  int l_k = 0;
  bool l_forward = false;
  auto* lad = app.add_subcommand("ladder", "reverse iterations with spacing and increment reports");
  lad->add_option("--T", l_T)->required();
  lad->add_option("--k", l_k)->required();
  lad->add_flag("--forward", l_forward, "direct iterations phi_1^r(T) instead");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "convergence table for one asymptotic formula");
  verify->add_option("target", va.target, "hl1922 | hli | ingham | theorem1 | hli-functional | "
                                          "ingham-functional | determinant")
      ->required();
  auto* oT = verify->add_option("--T", va.T)->delimiter(',');
  auto* oS = verify->add_option("--sigma", va.sigma)->delimiter(',');
  auto* oR = verify->add_option("--r", va.r)->delimiter(',');
  auto* oTau = verify->add_option("--tau", va.tau)->delimiter(',');
  verify->add_option("--x", va.x);

  std::string f_x, f_y, f_z, f_kind = "hli";
  long long f_n = 0;
  double f_sigma = 1;
  std::vector<double> f_tau{5000};
  auto* fermat = app.add_subcommand("fermat", "cross-bred functional at x = (x^n + y^n)/z^n");
  fermat->add_option("x", f_x)->required();
  fermat->add_option("y", f_y)->required();
  fermat->add_option("z", f_z)->required();
  fermat->add_option("n", f_n)->required();
  fermat->add_option("--sigma", f_sigma);
  auto* fTau = fermat->add_option("--tau", f_tau)->delimiter(',');
  fermat->add_option("--kind", f_kind, "hli or ingham");

  auto* cache = app.add_subcommand("cache", "moment cache maintenance");
  cache->require_subcommand(1);
  bool c_force = false;
  auto* c_init = cache->add_subcommand("init", "create an empty cache");
  c_init->add_flag("--force", c_force);
  auto* c_stats = cache->add_subcommand("stats", "print cache contents");
  double c_to = 0;
  std::vector<double> c_sigma{0.5};
  int c_power = 2;
  auto* c_ext = cache->add_subcommand("extend", "extend cumulative series");
  c_ext->add_option("--to", c_to)->required();
  auto* cSigma = c_ext->add_option("--sigma", c_sigma)->delimiter(',');
  c_ext->add_option("--power", c_power);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_code(ErrorKind::usage);
  }

  try {
    ExperimentConfig cfg;
    if (!config_file.empty()) apply_config_file(cfg, config_file);
    if (cache_path) cfg.set("cache", *cache_path);
    if (out_dir) cfg.set("out", *out_dir);
    if (format) cfg.set("format", *format);
    if (mode) cfg.set("mode", *mode);
    if (expectations) cfg.set("expectations", *expectations);
    if (solver_tol) cfg.solver_tol = *solver_tol;
    if (T0) cfg.T0 = *T0;
    if (eps_min) cfg.eps_min = *eps_min;
    if (max_evals) cfg.max_evals = *max_evals;
    for (const auto& kv : sets) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    cfg.validate();
    Expectations ex = cfg.expectations.empty() ? default_expectations() : load_expectations(cfg.expectations);

    Session s(cfg, ex, std::vector<std::string>(argv, argv + argc), out);
    if (zeta->parsed()) {
      cmd_zeta(s, z_sigma, z_t, z_tol);
    } else if (moment->parsed()) {
      cmd_moment(s, m_lower, m_upper, m_sigma, m_power, m_tol);
    } else if (lad->parsed()) {
      cmd_ladder(s, l_T, l_k, l_forward);
    } else if (verify->parsed()) {
      for (const auto* o : {oT, oS, oR, oTau}) require_no_blank(o);
      va.T_set = oT->count() > 0;
      va.sigma_set = oS->count() > 0;
      va.r_set = oR->count() > 0;
      va.tau_set = oTau->count() > 0;
      cmd_verify(s, va);
    } else if (fermat->parsed()) {
      require_no_blank(fTau);
      cmd_fermat(s, f_x, f_y, f_z, f_n, f_sigma, f_tau, f_kind);
    } else if (c_init->parsed()) {
      cmd_cache_init(s, c_force);
    } else if (c_stats->parsed()) {
      cmd_cache_stats(s);
    } else if (c_ext->parsed()) {
      require_no_blank(cSigma);
      cmd_cache_extend(s, c_to, c_sigma, c_power);
    }
  } catch (const Error& e) {
    err << "jladder: " << error_kind_name(e.kind()) << " error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "jladder: internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace jacobs::cli
