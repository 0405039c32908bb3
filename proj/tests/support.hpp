#pragma once

#include "jacobs/errors.hpp"
#include "jacobs/moments.hpp"

#include <unistd.h>

#include <filesystem>
#include <string>

namespace support {

inline std::string cache_file() { return std::string(JACOBS_TEST_CACHE) + "/moments.txt"; }

// Cache shared by every test binary; loaded once, saved at exit.
struct SharedCache {
  jacobs::moments::MomentCache cache;
  std::size_t loaded = 0;

  SharedCache() : cache(load()) { loaded = cache.checkpoint_count(); }
  ~SharedCache() {
    if (cache.checkpoint_count() != loaded) jacobs::moments::cache_save(cache, cache_file());
  }

  static jacobs::moments::MomentCache load() {
    if (std::filesystem::exists(cache_file())) {
      try {
        return jacobs::moments::cache_load(cache_file(), {});
      } catch (const jacobs::Error&) {
      }
    }
    return jacobs::moments::MomentCache{};
  }

  void save() {
    jacobs::moments::cache_save(cache, cache_file());
    loaded = cache.checkpoint_count();
  }
};

inline SharedCache& shared() {
  static SharedCache s;
  return s;
}

inline jacobs::moments::MomentCache& cache() { return shared().cache; }

inline std::string temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("jacobs-test-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p.string();
}

}  // namespace support
