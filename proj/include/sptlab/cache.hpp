#pragma once

// On-disk series cache and the shared stream provider.
//
// File format:
//   QSCACHE v1
//   kind=<tag> params=<p1,p2,...> nmax=<N> mod=<M|0> frac24=<f>
//   rows=<count>
//   <n> <coefficient>      (one per row, ascending n)
//   end

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sptlab/partitions.hpp"
#include "sptlab/series.hpp"

namespace sptlab {

struct CacheEntry {
  std::string kind;
  std::vector<std::int64_t> params;
  Series values;
};

/// Writes to a temporary file beside `path` and renames it into place.
void cache_store(const std::filesystem::path& path, const CacheEntry& entry);

/// nullopt when the file is missing; a malformed or truncated file is also a
/// miss, with a warning on stderr.
std::optional<CacheEntry> cache_load(const std::filesystem::path& path);

/// "<kind>-mod<M>.qsc"
std::string cache_file_name(StreamKind kind, Modulus m);

/// Builds p, spt, d, a streams on demand and keeps the longest one computed
/// per (kind, modulus). Thread safe; each key is built by one thread at a time.
class StreamProvider {
 public:
  void set_cache_dir(std::optional<std::filesystem::path> dir);
  CoeffStream get(StreamKind kind, Index N, Modulus m);
  void clear();

 private:
  struct Slot {
    std::mutex mu;
    std::optional<CoeffStream> stream;
  };
  std::shared_ptr<Slot> slot(StreamKind kind, Modulus m);
  std::optional<CoeffStream> from_larger_modulus(StreamKind kind, Index N, Modulus m);
  CoeffStream build(StreamKind kind, Index N, Modulus m);

  std::mutex mu_;
  std::map<std::pair<StreamKind, Modulus>, std::shared_ptr<Slot>> slots_;
  std::optional<std::filesystem::path> dir_;
};

StreamProvider& streams();

}  // namespace sptlab
