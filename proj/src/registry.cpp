#include "sptlab/registry.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "sptlab/checks.hpp"
#include "sptlab/forms.hpp"
#include "sptlab/gamma0.hpp"
#include "sptlab/hecke.hpp"

namespace sptlab {

namespace {

using Ells = std::vector<std::int64_t>;

Ells ells_or(const CheckOptions& o, Ells def) {
  Ells out = o.ells.empty() ? std::move(def) : o.ells;
  for (auto ell : out) s_of(ell);
  return out;
}

std::vector<int> levels_or(const CheckOptions& o, std::vector<int> def) {
  if (o.t == 0) return def;
  require_level(o.t);
  return {o.t};
}

Index nmax_or(const CheckOptions& o, Index def) { return o.nmax >= 0 ? o.nmax : def; }

void reject_modulus(const CheckOptions& o, const std::string& name) {
  if (o.modulus) throw std::invalid_argument(name + " does not take --mod");
}

CheckTask one(std::string label, std::function<CongruenceReport()> f) {
  return {std::move(label), [f = std::move(f)] { return std::vector<CongruenceReport>{f()}; }};
}

// (t, ell) pairs: explicit --t/--ell select from the cross product, otherwise
// the default list.
std::vector<std::pair<int, std::int64_t>> level_pairs(const CheckOptions& o) {
  const std::vector<std::pair<int, std::int64_t>> def = {{5, 7}, {7, 5}, {13, 5}};
  if (o.t == 0 && o.ells.empty()) return def;
  std::vector<std::pair<int, std::int64_t>> out;
  for (int t : levels_or(o, {5, 7, 13})) {
    Ells ells = o.ells;
    if (ells.empty()) {
      for (auto [tt, ll] : def) if (tt == t) ells.push_back(ll);
    }
    for (auto ell : ells) {
      s_of(ell);
      if (ell == t) throw std::invalid_argument("ell must differ from t");
      out.emplace_back(t, ell);
    }
  }
  return out;
}

std::vector<CheckSpec> build_registry() {
  std::vector<CheckSpec> r;

  r.push_back({"ono-poly", "first Ono polynomials A_0, A_1, A_2", Status::pass,
               [](const CheckOptions& o) {
                 reject_modulus(o, "ono-poly");
                 return std::vector<CheckTask>{one("ono-poly", [] { return check_ono_polys(); })};
               }});

  r.push_back({"zell", "Z_ell eta = C_ell(j)", Status::pass, [](const CheckOptions& o) {
                 reject_modulus(o, "zell");
                 std::vector<CheckTask> tasks;
                 const Index N = nmax_or(o, 50);
                 for (auto ell : ells_or(o, {5, 7, 11, 13})) {
                   tasks.push_back(one("zell", [ell, N] { return verify_zell(ell, N); }));
                 }
                 return tasks;
               }});

  r.push_back({"xi", "ell Xi_ell eta Delta^s as a level-1 combination", Status::pass,
               [](const CheckOptions& o) {
                 reject_modulus(o, "xi");
                 std::vector<CheckTask> tasks;
                 const Index N = nmax_or(o, 40);
                 for (auto ell : ells_or(o, {5, 7, 11})) {
                   tasks.push_back(one("xi", [ell, N] { return verify_xi(ell, N); }));
                 }
                 return tasks;
               }});

  r.push_back({"classical", "level-1 identities and Eisenstein congruences", Status::pass,
               [](const CheckOptions& o) {
                 reject_modulus(o, "classical");
                 const Index N = nmax_or(o, 500);
                 return std::vector<CheckTask>{
                     {"classical", [N] { return check_classical_congruences(N); }}};
               }});

  r.push_back({"spt-hecke", "spt Hecke-type congruences mod 72, t and 32760", Status::pass,
               [](const CheckOptions& o) {
                 std::vector<CheckTask> tasks;
                 for (auto ell : ells_or(o, {5, 7, 11, 13})) {
                   std::vector<std::pair<Modulus, Index>> mods;
                   if (o.modulus) {
                     if (*o.modulus == 0) throw std::invalid_argument("spt-hecke needs a modulus");
                     mods.emplace_back(*o.modulus, nmax_or(o, 200));
                   } else {
                     if (o.t == 0) mods.emplace_back(72, nmax_or(o, 200));
                     for (int t : levels_or(o, {5, 7, 13})) {
                       if (t != ell) mods.emplace_back(t, nmax_or(o, 200));
                     }
                     if (o.t == 0 && ell != 5 && ell != 7 && ell != 13) {
                       mods.emplace_back(32760, nmax_or(o, 100));
                     }
                   }
                   for (auto [M, N] : mods) {
                     if (M == 32760 && (ell == 5 || ell == 7 || ell == 13)) {
                       throw std::invalid_argument("modulus 32760 needs ell outside {5, 7, 13}");
                     }
                     if ((M == 5 || M == 7 || M == 13) && static_cast<Modulus>(ell) == M) {
                       throw std::invalid_argument("ell must differ from t");
                     }
                     tasks.push_back(one("spt-hecke", [ell, M, N] { return check_spt_hecke(ell, M, N); }));
                   }
                 }
                 return tasks;
               }});

  r.push_back({"spt-ell-square", "spt(ell^2 n - s) = 0 (mod ell)", Status::pass,
               [](const CheckOptions& o) {
                 reject_modulus(o, "spt-ell-square");
                 std::vector<CheckTask> tasks;
                 const Index N = nmax_or(o, 300);
                 for (auto ell : ells_or(o, {5, 7, 11})) {
                   tasks.push_back(one("spt-ell-square", [ell, N] { return check_spt_ell_square(ell, N); }));
                 }
                 return tasks;
               }});

  r.push_back({"spt-prime-powers", "spt congruences modulo powers of 5, 7, 13", Status::pass,
               [](const CheckOptions& o) {
                 reject_modulus(o, "spt-prime-powers");
                 std::vector<CheckTask> tasks;
                 const int a = o.prec >= 0 ? static_cast<int>(o.prec) : 3;
                 if (a < 3) throw std::invalid_argument("--prec must be at least 3");
                 for (int t : levels_or(o, {5, 7, 13})) {
                   const Index N = nmax_or(o, t == 5 ? 30 : t == 7 ? 20 : 8);
                   tasks.push_back(one("spt-prime-powers", [t, a, N] { return check_spt_prime_powers(t, a, N); }));
                 }
                 return tasks;
               }});

  r.push_back({"a-atkin", "Atkin-type congruences for a(n) mod t^c", Status::pass,
               [](const CheckOptions& o) {
                 reject_modulus(o, "a-atkin");
                 std::vector<CheckTask> tasks;
                 const Index N = nmax_or(o, 50);
                 tasks.push_back(one("a-atkin-instance", [] { return check_a_atkin_instance(); }));
                 for (auto [t, ell] : level_pairs(o)) {
                   tasks.push_back(one("a-atkin", [t, ell, N] { return check_a_atkin(t, ell, N); }));
                 }
                 return tasks;
               }});

  r.push_back({"beta-tell", "Gamma0(t) decomposition of A_ell and beta_{t,ell}", Status::pass,
               [](const CheckOptions& o) {
                 reject_modulus(o, "beta-tell");
                 std::vector<CheckTask> tasks;
                 const Index N = nmax_or(o, 50);
                 for (auto [t, ell] : level_pairs(o)) {
                   tasks.push_back({"beta-tell", [t, ell, N] { return check_beta_tell(t, ell, N); }});
                 }
                 return tasks;
               }});

  r.push_back({"b1-mod5", "b_{1,ell} = 0 (mod 5)", Status::pass, [](const CheckOptions& o) {
                 reject_modulus(o, "b1-mod5");
                 std::vector<CheckTask> tasks;
                 for (auto ell : ells_or(o, {7, 11, 13})) {
                   if (ell == 5) throw std::invalid_argument("b1-mod5 needs ell != 5");
                   tasks.push_back(one("b1-mod5", [ell] { return check_b1_mod5(ell); }));
                 }
                 return tasks;
               }});

  r.push_back({"mell", "A_ell = 0 (mod ell)", Status::pass, [](const CheckOptions& o) {
                 reject_modulus(o, "mell");
                 std::vector<CheckTask> tasks;
                 const Index N = nmax_or(o, 200);
                 for (auto ell : ells_or(o, {5, 7, 11, 13})) {
                   tasks.push_back(one("mell", [ell, N] { return verify_mell_cong(ell, N); }));
                 }
                 return tasks;
               }});

  r.push_back({"seg-psi", "S(z), its Fricke image, and Psi for K = 1", Status::pass,
               [](const CheckOptions& o) {
                 reject_modulus(o, "seg-psi");
                 const Index N = nmax_or(o, 100);
                 return std::vector<CheckTask>{{"seg-psi", [N] { return check_s_psi_identities(N); }}};
               }});

  r.push_back({"beta-examples", "solved K and beta_t vanishing patterns", Status::pass,
               [](const CheckOptions& o) {
                 reject_modulus(o, "beta-examples");
                 const Index N = nmax_or(o, 200);
                 return std::vector<CheckTask>{{"beta-examples", [N] { return check_beta_examples(N); }}};
               }});

  r.push_back({"lemmas", "Hauptmodul congruences for j and E4^2 E6/Delta", Status::pass,
               [](const CheckOptions& o) {
                 reject_modulus(o, "lemmas");
                 const Index N = nmax_or(o, 100);
                 return std::vector<CheckTask>{{"lemmas", [N] { return check_lemma_congruences(N); }}};
               }});

  r.push_back({"e46d", "exact E4^2 E6/Delta decomposition at t = 5", Status::pass,
               [](const CheckOptions& o) {
                 reject_modulus(o, "e46d");
                 const Index N = nmax_or(o, 60);
                 return std::vector<CheckTask>{one("e46d", [N] { return check_e46d_identity(N); })};
               }});

  r.push_back({"atkin-gamma", "constancy of Atkin's gamma_t", Status::pass,
               [](const CheckOptions& o) {
                 reject_modulus(o, "atkin-gamma");
                 std::vector<CheckTask> tasks;
                 const Index N = nmax_or(o, 60);
                 for (auto [t, ell] : level_pairs(o)) {
                   tasks.push_back(one("atkin-gamma", [t, ell, N] {
                     return atkin_gamma_constant(t, ell, N).report;
                   }));
                 }
                 return tasks;
               }});

  r.push_back({"spt-oracle", "spt stream against direct enumeration", Status::pass,
               [](const CheckOptions& o) {
                 reject_modulus(o, "spt-oracle");
                 const Index N = std::min<Index>(nmax_or(o, 35), 45);
                 return std::vector<CheckTask>{one("spt-oracle", [N] { return check_spt_oracle(N); })};
               }});
  return r;
}

}  // namespace

const std::vector<CheckSpec>& registry() {
  static const std::vector<CheckSpec> r = build_registry();
  return r;
}

const CheckSpec* find_check(const std::string& name) {
  for (const auto& c : registry()) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<CongruenceReport> run_tasks(const std::vector<CheckTask>& tasks, int jobs) {
  std::vector<std::vector<CongruenceReport>> results(tasks.size());
  std::vector<std::exception_ptr> usage(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      try {
        results[i] = tasks[i].run();
      } catch (const std::invalid_argument&) {
        usage[i] = std::current_exception();
      } catch (const std::exception& e) {
        CongruenceReport r;
        r.check = tasks[i].label;
        r.status = Status::fail;
        r.note = std::string("error: ") + e.what();
        results[i] = {r};
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < n; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : usage) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<CongruenceReport> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace sptlab
