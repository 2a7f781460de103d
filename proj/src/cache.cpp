#include "sptlab/cache.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

namespace sptlab {

namespace {

std::optional<std::string> field(const std::string& line, const std::string& key) {
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    if (tok.rfind(key + "=", 0) == 0) return tok.substr(key.size() + 1);
  }
  return std::nullopt;
}

std::optional<CacheEntry> miss(const std::filesystem::path& path, const std::string& why) {
  std::cerr << "warning: ignoring cache file " << path.string() << ": " << why << "\n";
  return std::nullopt;
}

}  // namespace

std::string cache_file_name(StreamKind kind, Modulus m) {
  return to_string(kind) + "-mod" + std::to_string(m) + ".qsc";
}

void cache_store(const std::filesystem::path& path, const CacheEntry& entry) {
  const Series& v = entry.values;
  std::ostringstream os;
  os << "QSCACHE v1\n";
  os << "kind=" << entry.kind << " params=";
  for (std::size_t i = 0; i < entry.params.size(); ++i) os << (i ? "," : "") << entry.params[i];
  os << " nmax=" << v.valid_to() << " mod=" << v.modulus() << " frac24=" << v.frac24() << "\n";
  os << "rows=" << v.size() << "\n";
  for (Index n = v.lo(); n <= v.valid_to(); ++n) os << n << " " << v.coeff(n).get_str() << "\n";
  os << "end\n";

  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ostringstream tag;
  tag << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "."
      << std::random_device{}();
  const std::filesystem::path tmp = path.string() + tag.str();
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    const std::string body = os.str();
    f.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!f) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::optional<CacheEntry> cache_load(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  std::string line;
  if (!std::getline(f, line) || line != "QSCACHE v1") return miss(path, "bad magic line");
  if (!std::getline(f, line)) return miss(path, "missing header");
  auto kind = field(line, "kind");
  auto params = field(line, "params");
  auto nmax = field(line, "nmax");
  auto mod = field(line, "mod");
  auto frac = field(line, "frac24");
  if (!kind || !params || !nmax || !mod || !frac) return miss(path, "incomplete header");

  CacheEntry e;
  e.kind = *kind;
  Index vt = 0;
  Modulus m = 0;
  int frac24 = 0;
  std::size_t rows = 0;
  try {
    std::istringstream ps(*params);
    std::string p;
    while (std::getline(ps, p, ',')) e.params.push_back(std::stoll(p));
    vt = std::stoll(*nmax);
    m = std::stoull(*mod);
    frac24 = std::stoi(*frac);
    if (!std::getline(f, line) || line.rfind("rows=", 0) != 0) return miss(path, "missing row count");
    rows = std::stoull(line.substr(5));
  } catch (const std::exception&) {
    return miss(path, "unparsable header");
  }
  if (frac24 < 0 || frac24 > 23 || m >= kMaxModulus) return miss(path, "header out of range");

  std::vector<Integer> exact;
  std::vector<Modulus> res;
  Index lo = vt - static_cast<Index>(rows) + 1;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!std::getline(f, line)) return miss(path, "row count mismatch");
    std::istringstream rs(line);
    Index n;
    std::string c;
    if (!(rs >> n >> c) || n != lo + static_cast<Index>(i)) return miss(path, "bad row " + std::to_string(i));
    Integer x;
    if (x.set_str(c, 10) != 0) return miss(path, "bad coefficient in row " + std::to_string(i));
    if (m == 0) {
      exact.push_back(std::move(x));
    } else {
      if (x < 0 || x >= Integer(static_cast<unsigned long>(m))) return miss(path, "residue out of range");
      res.push_back(x.get_ui());
    }
  }
  if (!std::getline(f, line) || line != "end") return miss(path, "missing end marker");
  e.values = m == 0 ? Series::exact(frac24, lo, std::move(exact))
                    : Series::residues(frac24, lo, std::move(res), m);
  if (e.values.valid_to() != vt) return miss(path, "nmax does not match rows");
  return e;
}

StreamProvider& streams() {
  static StreamProvider provider;
  return provider;
}

void StreamProvider::set_cache_dir(std::optional<std::filesystem::path> dir) {
  std::lock_guard lock(mu_);
  dir_ = std::move(dir);
}

void StreamProvider::clear() {
  std::lock_guard lock(mu_);
  slots_.clear();
}

std::shared_ptr<StreamProvider::Slot> StreamProvider::slot(StreamKind kind, Modulus m) {
  std::lock_guard lock(mu_);
  auto& p = slots_[{kind, m}];
  if (!p) p = std::make_shared<Slot>();
  return p;
}

std::optional<CoeffStream> StreamProvider::from_larger_modulus(StreamKind kind, Index N, Modulus m) {
  std::vector<std::shared_ptr<Slot>> candidates;
  {
    std::lock_guard lock(mu_);
    for (auto& [key, s] : slots_) {
      if (key.first == kind && key.second != m && (key.second == 0 || key.second % m == 0)) {
        candidates.push_back(s);
      }
    }
  }
  for (auto& s : candidates) {
    std::unique_lock lock(s->mu, std::try_to_lock);
    if (lock.owns_lock() && s->stream && s->stream->nmax() >= N) {
      return s->stream->truncated(N).reduced(m);
    }
  }
  return std::nullopt;
}

CoeffStream StreamProvider::build(StreamKind kind, Index N, Modulus m) {
  switch (kind) {
    case StreamKind::p: return partition_stream(N, m);
    case StreamKind::spt: return spt_stream(N, m);
    case StreamKind::d: return d_stream(get(StreamKind::p, N, m));
    case StreamKind::a: return weighted_streams(get(StreamKind::p, N, m), get(StreamKind::spt, N, m)).a;
  }
  throw std::logic_error("unknown stream kind");
}

CoeffStream StreamProvider::get(StreamKind kind, Index N, Modulus m) {
  if (N < 0) N = 0;
  auto s = slot(kind, m);
  std::lock_guard lock(s->mu);
  if (s->stream && s->stream->nmax() >= N) return s->stream->truncated(N);

  std::optional<std::filesystem::path> file;
  {
    std::lock_guard g(mu_);
    if (dir_) file = *dir_ / cache_file_name(kind, m);
  }
  if (file) {
    if (auto e = cache_load(*file); e && e->values.modulus() == m && e->values.valid_to() >= N &&
                                    e->kind == to_string(kind)) {
      s->stream = CoeffStream{kind, e->values};
      return s->stream->truncated(N);
    }
  }
  if (m != 0) {
    if (auto r = from_larger_modulus(kind, N, m)) {
      s->stream = *r;
      return *r;
    }
  }
  s->stream = build(kind, N, m);
  if (file) cache_store(*file, {to_string(kind), {}, s->stream->values});
  return s->stream->truncated(N);
}

}  // namespace sptlab
