#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "sptlab/cache.hpp"
#include "sptlab/checks.hpp"
#include "sptlab/cli.hpp"
#include "sptlab/registry.hpp"

using namespace sptlab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("sptlab-test-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

struct CliResult {
  int code;
  std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sptlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  f << s;
}

}  // namespace

TEST_CASE("inv24") {
  CHECK(inv24(5) == 4);
  CHECK(inv24(125) == 99);
  CHECK(inv24(7) == 5);
  CHECK(inv24(343) == 243);
  CHECK(inv24(13) == 6);
  CHECK(inv24(2197) == 1007);
  for (Modulus m : {5u, 7u, 11u, 25u, 49u, 169u, 390625u}) CHECK((24 * inv24(m)) % m == 1);
  CHECK_THROWS_AS(inv24(6), std::invalid_argument);
}

TEST_CASE("prime power exponents") {
  CHECK(prime_power_exponent(5, 3) == 3);
  CHECK(prime_power_exponent(5, 4) == 5);
  CHECK(prime_power_exponent(7, 3) == 3);
  CHECK(prime_power_exponent(7, 4) == 5);
  CHECK(prime_power_exponent(13, 3) == 2);
  CHECK_THROWS(prime_power_exponent(5, 2));
}

TEST_CASE("theorem sweeps") {
  CHECK(check_spt_hecke(11, 32760, 100).passed());
  CHECK(check_spt_hecke(7, 72, 200).passed());
  CHECK(check_spt_hecke(7, 5, 200).passed());
  CHECK(check_spt_ell_square(5, 500).passed());
  CHECK(check_spt_ell_square(11, 100).passed());
  CHECK(check_spt_prime_powers(5, 3, 30).passed());
  CHECK(check_spt_prime_powers(7, 3, 20).passed());
  CHECK(check_spt_prime_powers(13, 3, 8).passed());
  CHECK(check_a_atkin(5, 7, 50).passed());
  CHECK(check_a_atkin(13, 5, 30).passed());
  CHECK(check_a_atkin_instance().passed());
  CHECK(check_ono_polys().passed());
  CHECK(check_spt_oracle(35).passed());
  for (std::int64_t ell : {7, 11, 13}) CHECK(check_b1_mod5(ell).passed());
}

TEST_CASE("parameter errors") {
  CHECK_THROWS_AS(check_spt_hecke(5, 32760, 10), std::invalid_argument);
  CHECK_THROWS_AS(check_spt_hecke(5, 5, 10), std::invalid_argument);
  CHECK_THROWS_AS(check_spt_hecke(11, 11, 10), std::invalid_argument);
  CHECK_THROWS_AS(check_a_atkin(5, 5, 10), std::invalid_argument);
  CHECK_THROWS_AS(check_spt_prime_powers(5, 2, 10), std::invalid_argument);
  CHECK_THROWS_AS(check_b1_mod5(5), std::invalid_argument);
}

TEST_CASE("the a-atkin instance at n = 1") {
  // lhs 149077845 and a(1) = 35: 149077845 + 280 = 5^6 * 9539
  CHECK((149077845 + 280) % 15625 == 0);
  auto r = check_a_atkin_instance();
  CHECK(r.n_verified >= 1);
  CHECK(r.params.find("ell=7") != std::string::npos);
}

TEST_CASE("reports: first failure is the smallest n") {
  CongruenceReport r;
  Series a = Series::residues(0, 0, {0, 1, 2, 3, 4}, 5);
  Series b = Series::residues(0, 0, {0, 1, 0, 3, 0}, 5);
  compare_into(r, a, b, 0, 4, 5);
  CHECK(r.status == Status::fail);
  REQUIRE(r.first_failure);
  CHECK(r.first_failure->n == 2);
  CHECK(r.first_failure->lhs == "2");
  CHECK(r.first_failure->rhs == "0");
  CHECK(r.n_verified == 5);

  CongruenceReport ok;
  ok.check = "x";
  auto c = combine("both", "claim", "", {ok, r});
  CHECK(c.status == Status::fail);
  CHECK(c.first_failure->n == 2);
  CHECK(format_text(r).find("first failure at n=2") != std::string::npos);
}

TEST_CASE("cache round trip") {
  TempDir dir;
  CoeffStream p = partition_stream(10000, 72);
  fs::path f = dir.path / cache_file_name(StreamKind::p, 72);
  CHECK(f.filename() == "p-mod72.qsc");
  cache_store(f, {"p", {}, p.values});
  auto e = cache_load(f);
  REQUIRE(e);
  CHECK(e->kind == "p");
  CHECK(e->values.modulus() == 72);
  CHECK(e->values.valid_to() == 10000);
  CHECK(e->values.residue_coeffs() == p.values.residue_coeffs());

  std::string text = slurp(f);
  CHECK(text.rfind("QSCACHE v1\nkind=p params= nmax=10000 mod=72 frac24=0\nrows=10001\n0 1\n1 1\n", 0) == 0);
  CHECK(text.size() >= 4);
  CHECK(text.substr(text.size() - 4) == "end\n");

  // exact, fractional grid, negative start
  Series s = Series::exact(23, -2, {Integer(-5), Integer(0), Integer("123456789012345678901234567890")});
  fs::path g = dir.path / "x.qsc";
  cache_store(g, {"a", {5, 7}, s});
  auto e2 = cache_load(g);
  REQUIRE(e2);
  CHECK(e2->params == std::vector<std::int64_t>{5, 7});
  CHECK(e2->values.frac24() == 23);
  CHECK(e2->values.lo() == -2);
  CHECK(e2->values.exact_coeffs() == s.exact_coeffs());

  for (const auto& entry : fs::directory_iterator(dir.path)) {
    CHECK(entry.path().string().find(".tmp.") == std::string::npos);
  }
}

TEST_CASE("cache misses") {
  TempDir dir;
  CHECK(!cache_load(dir.path / "missing.qsc"));

  fs::path f = dir.path / "p.qsc";
  cache_store(f, {"p", {}, partition_stream(20).values});
  const std::string good = slurp(f);

  std::string bad_rows = good;
  bad_rows.replace(bad_rows.find("rows=21"), 7, "rows=25");
  spit(f, bad_rows);
  CHECK(!cache_load(f));

  std::string truncated = good.substr(0, good.size() - 10);
  spit(f, truncated);
  CHECK(!cache_load(f));

  std::string bad_magic = "X" + good;
  spit(f, bad_magic);
  CHECK(!cache_load(f));

  std::string bad_coeff = good;
  bad_coeff.replace(bad_coeff.find("\n4 5\n"), 5, "\n4 z\n");
  spit(f, bad_coeff);
  CHECK(!cache_load(f));
}

TEST_CASE("stream provider reuses larger moduli and the disk cache") {
  TempDir dir;
  streams().clear();
  streams().set_cache_dir(dir.path);
  CoeffStream a = streams().get(StreamKind::p, 300, 72);
  CHECK(fs::exists(dir.path / "p-mod72.qsc"));
  CoeffStream b = streams().get(StreamKind::p, 200, 8);
  CoeffStream ref = partition_stream(200, 8);
  CHECK(b.values.residue_coeffs() == ref.values.residue_coeffs());
  CoeffStream d = streams().get(StreamKind::d, 50, 0);
  CHECK(d.frac24() == 23);
  CHECK(d.at(1) == 23);
  streams().set_cache_dir(std::nullopt);
  streams().clear();
}

TEST_CASE("registry") {
  std::set<std::string> names;
  for (const auto& c : registry()) {
    CHECK(names.insert(c.name).second);
    CHECK(!c.summary.empty());
  }
  for (const char* n : {"ono-poly", "zell", "xi", "classical", "spt-hecke", "spt-ell-square",
                        "spt-prime-powers", "a-atkin", "beta-tell", "mell", "seg-psi",
                        "beta-examples", "lemmas", "e46d", "atkin-gamma", "spt-oracle"}) {
    CHECK(find_check(n) != nullptr);
  }
  CHECK(find_check("nope") == nullptr);

  CheckOptions bad;
  bad.ells = {5};
  bad.t = 5;
  CHECK_THROWS_AS(find_check("a-atkin")->plan(bad), std::invalid_argument);
  CheckOptions jell;
  jell.ells = {5};
  jell.modulus = 32760;
  CHECK_THROWS_AS(find_check("spt-hecke")->plan(jell), std::invalid_argument);
}

TEST_CASE("run_tasks keeps order and turns errors into failures") {
  std::vector<CheckTask> tasks;
  for (int i = 0; i < 12; ++i) {
    tasks.push_back({"t" + std::to_string(i), [i] {
                       CongruenceReport r;
                       r.check = "t" + std::to_string(i);
                       return std::vector<CongruenceReport>{r};
                     }});
  }
  tasks.push_back({"boom", []() -> std::vector<CongruenceReport> { throw std::runtime_error("x"); }});
  auto out = run_tasks(tasks, 4);
  REQUIRE(out.size() == 13);
  for (int i = 0; i < 12; ++i) CHECK(out[i].check == "t" + std::to_string(i));
  CHECK(out[12].status == Status::fail);
  CHECK(!out[12].note.empty());

  std::vector<CheckTask> bad{{"bad", []() -> std::vector<CongruenceReport> {
                                throw std::invalid_argument("no");
                              }}};
  CHECK_THROWS_AS(run_tasks(bad, 2), std::invalid_argument);
}

TEST_CASE("cli exit codes") {
  streams().clear();
  CHECK(cli({"check", "spt-hecke", "--ell", "11", "--mod", "32760", "--nmax", "100"}).code == 0);
  CHECK(cli({"check", "ono-poly"}).code == 0);
  CHECK(cli({"check", "nope"}).code == 2);
  CHECK(cli({"check", "a-atkin", "--ell", "5", "--t", "5"}).code == 2);
  CHECK(cli({"check", "spt-hecke", "--ell", "5", "--mod", "32760"}).code == 2);
  CHECK(cli({"check", "spt-hecke", "--mod", "banana"}).code == 2);
  CHECK(cli({"check", "spt-hecke", "--t", "11"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"series", "q", "--n", "5"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("cli: a poisoned cache makes a check fail with exit 1") {
  TempDir dir;
  streams().clear();
  auto w = cli({"series", "spt", "--n", "12100", "--mod", "32760", "--out", dir.path.string() + "/"});
  REQUIRE(w.code == 0);
  fs::path f = dir.path / "spt-mod32760.qsc";
  REQUIRE(fs::exists(f));
  std::string text = slurp(f);
  text.replace(text.find("\n1 1\n"), 5, "\n1 2\n");
  spit(f, text);
  streams().clear();
  auto r = cli({"check", "spt-hecke", "--ell", "11", "--mod", "32760", "--nmax", "100",
                "--cache-dir", dir.path.string(), "--format", "json"});
  streams().clear();
  streams().set_cache_dir(std::nullopt);
  CHECK(r.code == 1);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["status"] == "fail");
  CHECK(j[0]["first_failure"]["n"] == 1);
  CHECK(j[0]["first_failure"]["modulus"] == 32760);
}

TEST_CASE("cli json fields") {
  streams().clear();
  auto r = cli({"check", "spt-ell-square", "--ell", "5", "--nmax", "50", "--format", "json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  for (const auto& o : j) {
    for (const char* k : {"check", "claim", "params", "n_verified", "status", "first_failure", "elapsed_ms"})
      CHECK(o.contains(k));
    CHECK(o["first_failure"].is_null());
    CHECK(o["status"] == "pass");
  }
}

TEST_CASE("cli series output") {
  auto r = cli({"series", "spt", "--n", "5"});
  CHECK(r.code == 0);
  CHECK(r.out == "0 0\n1 1\n2 3\n3 5\n4 10\n5 14\n");
  auto a = cli({"series", "a", "--n", "1"});
  CHECK(a.out == "0 -1\n1 35\n");
}

TEST_CASE("parallel and serial runs agree") {
  auto strip = [](std::string s) {
    auto j = nlohmann::json::parse(s);
    for (auto& o : j) o.erase("elapsed_ms");
    return j.dump();
  };
  streams().clear();
  auto a = cli({"check", "all", "--nmax", "20", "--jobs", "1", "--format", "json"});
  streams().clear();
  auto b = cli({"check", "all", "--nmax", "20", "--jobs", "8", "--format", "json"});
  CHECK(a.code == b.code);
  CHECK(strip(a.out) == strip(b.out));
}
