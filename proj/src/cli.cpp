#include "sptlab/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <thread>

#include "sptlab/cache.hpp"
#include "sptlab/registry.hpp"

namespace sptlab {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<Modulus> parse_modulus(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text == "exact") return Modulus{0};
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw UsageError("--mod expects 'exact' or a positive integer, got '" + text + "'");
  }
  if (pos != text.size() || v < 2 || v >= kMaxModulus) {
    throw UsageError("--mod must be 'exact' or an integer in [2, 2^32), got '" + text + "'");
  }
  return static_cast<Modulus>(v);
}

StreamKind parse_kind(const std::string& k) {
  if (k == "p") return StreamKind::p;
  if (k == "spt") return StreamKind::spt;
  if (k == "d") return StreamKind::d;
  if (k == "a") return StreamKind::a;
  throw UsageError("unknown series kind '" + k + "' (expected p, spt, d or a)");
}

bool all_passed(const std::vector<CongruenceReport>& reports) {
  return std::none_of(reports.begin(), reports.end(),
                      [](const CongruenceReport& r) { return r.status == Status::fail; });
}

}  // namespace

std::string to_json(const std::vector<CongruenceReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j;
    j["check"] = r.check;
    j["claim"] = r.claim;
    j["params"] = r.params;
    j["n_verified"] = r.n_verified;
    j["status"] = to_string(r.status);
    if (r.first_failure) {
      j["first_failure"] = {{"n", r.first_failure->n},
                            {"lhs", r.first_failure->lhs},
                            {"rhs", r.first_failure->rhs},
                            {"modulus", r.first_failure->modulus}};
    } else {
      j["first_failure"] = nullptr;
    }
    j["elapsed_ms"] = r.elapsed_ms;
    if (!r.note.empty()) j["note"] = r.note;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"q-series laboratory for spt and partition congruences", "sptlab"};
  app.require_subcommand(1);

  std::string check_name, mod_text, cache_dir, format = "text";
  CheckOptions opts;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto* check = app.add_subcommand("check", "run a registered check, or 'all'");
  check->add_option("name", check_name, "check name or 'all'")->required();
  check->add_option("--ell", opts.ells, "comma-separated primes")->delimiter(',');
  check->add_option("--t", opts.t, "level 5, 7 or 13");
  check->add_option("--nmax", opts.nmax, "sweep bound")->check(CLI::NonNegativeNumber);
  check->add_option("--prec", opts.prec, "prime-power exponent")->check(CLI::NonNegativeNumber);
  check->add_option("--mod", mod_text, "exact or a modulus");
  check->add_option("--cache-dir", cache_dir, "directory for series cache files");
  check->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  check->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::string kind_text, series_mod, out_path;
  Index series_n = -1;
  auto* series = app.add_subcommand("series", "compute a coefficient stream");
  series->add_option("kind", kind_text, "p, spt, d or a")->required();
  series->add_option("--n", series_n, "last index")->required()->check(CLI::NonNegativeNumber);
  series->add_option("--mod", series_mod, "exact or a modulus");
  series->add_option("--out", out_path, "cache file or directory");

  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*check) {
      opts.modulus = parse_modulus(mod_text);
      if (opts.t != 0 && opts.t != 5 && opts.t != 7 && opts.t != 13) {
        throw UsageError("--t must be 5, 7 or 13");
      }
      streams().set_cache_dir(cache_dir.empty() ? std::nullopt
                                                : std::optional<std::filesystem::path>(cache_dir));
      std::vector<CheckTask> tasks;
      if (check_name == "all") {
        for (const auto& spec : registry()) {
          auto t = spec.plan(opts);
          tasks.insert(tasks.end(), t.begin(), t.end());
        }
      } else {
        const CheckSpec* spec = find_check(check_name);
        if (!spec) {
          std::string names;
          for (const auto& c : registry()) names += " " + c.name;
          throw UsageError("unknown check '" + check_name + "'; known:" + names);
        }
        tasks = spec->plan(opts);
      }
      const auto reports = run_tasks(tasks, jobs);
      if (format == "json") {
        out << to_json(reports) << "\n";
      } else {
        for (const auto& r : reports) out << format_text(r) << "\n";
      }
      return all_passed(reports) ? 0 : 1;
    }

    const StreamKind kind = parse_kind(kind_text);
    const Modulus m = parse_modulus(series_mod).value_or(0);
    const CoeffStream s = streams().get(kind, series_n, m);
    const CacheEntry entry{to_string(kind), {}, s.values};
    if (out_path.empty()) {
      for (Index n = 0; n <= s.nmax(); ++n) out << n << " " << s.at(n).get_str() << "\n";
      return 0;
    }
    std::filesystem::path p(out_path);
    if (std::filesystem::is_directory(p) || out_path.back() == '/') p /= cache_file_name(kind, m);
    cache_store(p, entry);
    out << "wrote " << p.string() << " (" << s.values.size() << " rows)\n";
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace sptlab
