// Acceptance suite: one PASS/FAIL/SKIP line per criterion.
//
//   acceptance            run all criteria, exit 1 if any failed
//   acceptance 6 9        run the listed criteria
//
// Exit code 77 (ctest SKIP_RETURN_CODE) is used when every requested
// criterion is skipped or cannot be measured on this machine; the printed line
// still says FAIL for an unmeasurable target.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "lonesieve/sieve.hpp"

using namespace lonesieve;

namespace {

enum class Status { Pass, Fail, Unmeasurable, Skip };

struct Outcome {
  Status status = Status::Pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, int prec = 2) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(prec) << v;
  return s.str();
}

// Collects failed checks; the first few are echoed in the detail line.
struct Checks {
  int failed = 0;
  std::vector<std::string> notes;
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failed;
    if (notes.size() < 3) notes.push_back(what);
  }
  Outcome outcome(const std::string& summary) const {
    if (!failed) return {Status::Pass, summary};
    std::string d = std::to_string(failed) + " check(s) failed:";
    for (auto& n : notes) d += " [" + n + "]";
    return {Status::Fail, d};
  }
};

const std::string kData = LONESIEVE_DATA_DIR;
const IntPoly kCubic{10, -8, 0, 1};

std::vector<std::uint32_t> odd_primes(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = lo | 1; p <= hi; p += 2)
    if (is_prime(p)) out.push_back(p);
  return out;
}

bool has_linear_factor(const IntPoly& g, std::uint32_t p) {
  auto d = factor_degree_profile(g, p).degrees;
  return std::find(d.begin(), d.end(), 1) != d.end();
}

// Independent of the factorization code: a cubic is irreducible mod p iff it has no root.
int root_count(const IntPoly& g, std::uint32_t p) {
  int n = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    std::int64_t v = 0;
    for (auto it = g.rbegin(); it != g.rend(); ++it) v = mod_of(v * x + *it, p);
    n += v == 0;
  }
  return n;
}

Outcome inert_below_41() {
  auto t0 = Clock::now();
  auto K = QuadraticFieldSpec::make(-163);
  auto B = CubicFieldSpec::make(kCubic);
  Checks c;
  auto primes = odd_primes(3, 37);
  for (auto p : primes) {
    c.expect(quadratic_splitting(K, p) == Splitting::Inert, "p=" + std::to_string(p) + " not inert in K");
    c.expect(has_linear_factor(kCubic, p), "p=" + std::to_string(p) + " cubic has no linear factor");
    c.expect(doomed_at(K, B, p).doomed, "p=" + std::to_string(p) + " not doomed");
  }
  double s = seconds_since(t0);
  c.expect(s < 1.0, "took " + fmt(s) + " s");
  return c.outcome(std::to_string(primes.size()) + " primes 3..37 inert in K with a linear cubic factor, " + fmt(s, 3) + " s");
}

Outcome split_bounds() {
  auto t0 = Clock::now();
  Checks c;
  for (auto [d, expect] : {std::pair{-163, 41u}, {-43, 11u}, {-67, 17u}}) {
    auto K = QuadraticFieldSpec::make(d);
    auto msp = min_split_prime(K);
    c.expect(msp == expect, "min_split_prime(" + std::to_string(d) + ") = " + std::to_string(msp));
    // quadratic-only doom bound: every odd prime below is doomed, the bound itself is not
    auto rep = doom_range_report(K, std::nullopt, expect);
    for (auto& r : rep.rows)
      if (r.p < expect) c.expect(r.doomed, "d=" + std::to_string(d) + " p=" + std::to_string(r.p) + " not doomed");
    c.expect(rep.smallest_non_doomed == expect, "d=" + std::to_string(d) + " smallest non-doomed differs");
  }
  double s = seconds_since(t0);
  c.expect(s < 1.0, "took " + fmt(s) + " s");
  return c.outcome("min split primes 41, 11, 17 and matching doom bounds, " + fmt(s, 3) + " s");
}

Outcome split_at_167() {
  Checks c;
  auto K = QuadraticFieldSpec::make(-163);
  c.expect(factor_degree_profile(kCubic, 167).degrees == std::vector<int>{1, 1, 1}, "profile at 167 is not {1,1,1}");
  c.expect(root_count(kCubic, 167) == 3, "root scan at 167 does not find 3 roots");
  c.expect(quadratic_splitting(K, 167) == Splitting::Split, "167 does not split in K");
  return c.outcome("p=167: cubic profile {1,1,1}, split in K");
}

Outcome usable_prime() {
  Checks c;
  std::optional<std::uint32_t> first, first_oracle;
  for (auto p : odd_primes(3, 1000)) {
    if ((-4 * 163) % static_cast<std::int64_t>(p) == 0) continue;
    if (!first && factor_degree_profile(kCubic, p).degrees == std::vector<int>{3}) first = p;
    if (!first_oracle && root_count(kCubic, p) == 0) first_oracle = p;
  }
  c.expect(first == 41u, "first {3} profile at " + (first ? std::to_string(*first) : std::string("none")));
  c.expect(first_oracle == first, "root-scan oracle disagrees");
  c.expect(quadratic_splitting(QuadraticFieldSpec::make(-163), 41) == Splitting::Split, "41 does not split in K");
  return c.outcome("smallest odd prime inert in B is 41 (factorization and root scan agree), 41 splits in K");
}

Outcome no_degree_six() {
  auto t0 = Clock::now();
  Checks c;
  auto K = QuadraticFieldSpec::make(-163);
  auto B = CubicFieldSpec::make(kCubic);
  c.expect(no_degree_six_check(K, B, 1000), "no_degree_six_check returned false");
  int both = 0;
  for (auto p : odd_primes(3, 1000)) {
    if (K.d % static_cast<std::int64_t>(p) == 0 || B.disc % static_cast<std::int64_t>(p) == 0) continue;
    bool inert_k = legendre_symbol(K.d, p) == -1;
    both += inert_k && root_count(kCubic, p) == 0;
  }
  c.expect(both == 0, std::to_string(both) + " primes inert in both by direct scan");
  double s = seconds_since(t0);
  c.expect(s < 5.0, "took " + fmt(s) + " s");
  return c.outcome("no odd unramified p <= 1000 inert in both K and B, " + fmt(s, 3) + " s");
}

Form klein(std::uint32_t p) {
  Form F(p, 4);
  F.set({3, 1, 0}, 1);
  F.set({0, 3, 1}, 1);
  F.set({1, 0, 3}, 1);
  return F;
}

Form fermat(std::uint32_t p) {
  Form F(p, 4);
  F.set({4, 0, 0}, 1);
  F.set({0, 4, 0}, 1);
  F.set({0, 0, 4}, 1);
  return F;
}

std::vector<EffectiveDivisor> effective_divisors(const PlaneCurve& C, int deg) {
  auto places = C.places_up_to_degree(deg);
  std::vector<EffectiveDivisor> out;
  std::function<void(std::size_t, EffectiveDivisor)> rec = [&](std::size_t from, EffectiveDivisor D) {
    if (D.degree() == deg) {
      out.push_back(D);
      return;
    }
    for (std::size_t i = from; i < places.size(); ++i)
      if (D.degree() + places[i].degree <= deg) rec(i, D + EffectiveDivisor(places[i]));
  };
  rec(0, {});
  return out;
}

Outcome oracle_equivalence() {
  auto t0 = Clock::now();
  Checks c;
  long pairs = 0, decisive = 0, nontrivial = 0;
  struct Case {
    Form F;
    int max_degree, mmax;
    const char* name;
  };
  for (auto& tc : {Case{klein(2), 3, 3, "Klein/F_2"}, Case{fermat(3), 2, 2, "Fermat/F_3"}}) {
    PlaneCurve C(tc.F);
    BruteForceOracle O(C, tc.mmax);
    for (int deg = 1; deg <= tc.max_degree; ++deg) {
      auto divs = effective_divisors(C, deg);
      for (auto& A : divs)
        for (auto& B : divs) {
          ++pairs;
          auto r = lin_equiv(A, B, C);
          if (r.equivalent) c.expect(verify_certificate(*r.certificate, A, B, C), "certificate rejected");
          Tristate t = O.equiv(A, B);
          if (t == Tristate::Unknown) continue;
          ++decisive;
          nontrivial += t == Tristate::True && !(A == B);
          c.expect(r.equivalent == (t == Tristate::True),
                   std::string(tc.name) + " " + A.to_string() + " vs " + B.to_string());
        }
    }
  }
  c.expect(nontrivial > 0, "oracle found no nontrivial equivalence");
  double s = seconds_since(t0);
  c.expect(s < 120.0, "took " + fmt(s) + " s");
  return c.outcome(std::to_string(pairs) + " pairs, " + std::to_string(decisive) + " decisive (" +
                   std::to_string(nontrivial) + " nontrivial), 0 disagreements, " + fmt(s, 1) + " s");
}

Outcome geometry_invariants() {
  Checks c;
  std::mt19937_64 rng(2024);
  auto toy = load_curve(kData + "/toy_quartic.json");
  std::vector<PlaneCurve> curves{PlaneCurve(klein(2)), PlaneCurve(fermat(3)), PlaneCurve(klein(3)),
                                 reduce_mod_p(toy.F, 5), reduce_mod_p(toy.F, 7)};
  int forms = 0, expansions = 0;
  for (auto& C : curves) {
    std::string name = C.form().to_string() + " mod " + std::to_string(C.p());
    std::uniform_int_distribution<std::uint32_t> coef(0, C.p() - 1);
    for (int done = 0; done < 100;) {
      Form G(C.p(), 1 + done % 3);
      for (auto& e : monomials(G.degree())) G.set(e, coef(rng));
      if (G.is_zero() || divisible_by(G, C.form())) continue;
      ++done;
      ++forms;
      c.expect(intersection_divisor(G, C).degree() == G.degree() * C.degree(), "Bezout on " + name);
    }
    std::size_t n = C.enumerate_points(1).size(), m = C.enumerate_points(2).size();
    c.expect(2 * sym2_enumerate(C).size() == n * n + m, "sym2 size on " + name);
    const int N = 8;
    for (int k = 1; k <= 2; ++k)
      for (auto& P : C.enumerate_points(k)) {
        auto s = eval_on_branch(C.form(), C.local_expansion(P, N), N + 1);
        bool ok = true;
        for (int i = 0; i <= N; ++i) ok = ok && s[i].is_zero();
        c.expect(ok, "expansion residual at " + to_string(P) + " on " + name);
        ++expansions;
      }
  }
  return c.outcome(std::to_string(forms) + " random forms satisfy Bezout on " + std::to_string(curves.size()) +
                   " curves; sym2 sizes match; " + std::to_string(expansions) + " branch expansions vanish to O(t^9)");
}

bool negation_closed(const std::vector<int>& W, int n) {
  for (int m : W)
    if (!std::count(W.begin(), W.end(), (n - m) % n)) return false;
  return true;
}

Outcome structural_sieve() {
  Checks c;
  auto D = load_curve(kData + "/toy_quartic.json");
  auto lonely = load_certificates(kData + "/toy_lonely.json");
  int n = D.n;
  for (std::uint32_t p : {5u, 11u}) {
    std::string tag = "p=" + std::to_string(p);
    auto scan = fixed_points_mod_p(D, p);
    c.expect(scan.extra_fixed_point, tag + " no extra fixed point");
    PlaneCurve C = reduce_mod_p(D.F, p);
    auto sets = build_Hp_Sp(D, C, p, {});
    for (const char* label : {"cusps", "2c0", "2cinf"}) {
      auto Q = reduce_known_divisor(*D.find(label), p);
      c.expect(std::count(sets.S.begin(), sets.S.end(), Q) == 1, tag + " " + label + " not in S_p");
    }
    auto W = compute_Wp(D, p, {}).Wp;
    c.expect(std::count(W.begin(), W.end(), 1) == 1, tag + " 1 not in W_p");
    c.expect(std::count(W.begin(), W.end(), n - 1) == 1, tag + " n-1 not in W_p");
  }
  int runs = 0;
  for (std::uint32_t p : {5u, 7u, 11u, 13u})
    for (bool certified : {false, true})
      for (int workers : {1, 3}) {
        auto W = compute_Wp(D, p, certified ? lonely : LonelyCertificates{}, workers).Wp;
        c.expect(negation_closed(W, n), "W_p not symmetric at p=" + std::to_string(p));
        ++runs;
      }
  return c.outcome("toy quartic (n=4) at p=5, 11: extra fixed point, cusp divisors in S_p, {1, 3} in W_p; W_p = -W_p on " +
                   std::to_string(runs) + " runs");
}

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  Run r;
  std::string cmd = "env -u LONESIEVE_CACHE '" + std::string(LONESIEVE_CLI) + "' " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), got);
  int st = pclose(f);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

Outcome determinism() {
  Checks c;
  std::string base = "sieve --curve '" + kData + "/toy_quartic.json' --lonely '" + kData + "/toy_lonely.json' --primes 5,7,11,13";
  Run a = run_cli(base + " --workers 1"), b = run_cli(base + " --workers 4");
  c.expect(a.code == 0 && b.code == 0, "exit codes " + std::to_string(a.code) + ", " + std::to_string(b.code));
  c.expect(!a.out.empty() && a.out == b.out, "outputs differ");
  Run t1 = run_cli(base + " --format text --workers 2"), t2 = run_cli(base + " --format text --workers 3");
  c.expect(!t1.out.empty() && t1.out == t2.out, "text outputs differ");
  return c.outcome("sieve output identical for 1 and 4 workers (" + std::to_string(a.out.size()) + " bytes), text view too");
}

Outcome performance() {
  auto D = load_curve(kData + "/perf_quartic_f41_n27.json");
  const std::uint32_t p = 41;
  auto t0 = Clock::now();
  auto r1 = compute_Wp(D, p, {}, 1);
  double s1 = seconds_since(t0);
  t0 = Clock::now();
  auto r4 = compute_Wp(D, p, {}, 4);
  double s4 = seconds_since(t0);
  double speedup = s1 / s4;
  r1.ms_elapsed.reset();
  r4.ms_elapsed.reset();
  unsigned hw = std::thread::hardware_concurrency();
  std::string detail = "|X2(F_41)| = " + std::to_string(r1.sym2_size) + ", n = " + std::to_string(D.n) + ": 1 worker " +
                       fmt(s1, 1) + " s (limit 300 s), 4 workers " + fmt(s4, 1) + " s, speedup " + fmt(speedup) +
                       "x (target 2.5x), " + std::to_string(hw) + " hardware thread(s)";
  if (r1.to_json() != r4.to_json()) return {Status::Fail, detail + "; reports differ"};
  if (s1 >= 300.0) return {Status::Fail, detail};
  if (speedup >= 2.5) return {Status::Pass, detail};
  if (hw < 4) return {Status::Unmeasurable, detail + "; a 4-worker speedup cannot be observed on this machine"};
  return {Status::Fail, detail};
}

Outcome level43_stretch() {
  return {Status::Skip, "no external level-43 plane model and involution supplied (not gating)"};
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "inert primes below 41", inert_below_41},
    {2, "split bounds", split_bounds},
    {3, "complete splitting at 167", split_at_167},
    {4, "usable prime scan", usable_prime},
    {5, "no degree-six invariant", no_degree_six},
    {6, "oracle equivalence", oracle_equivalence},
    {7, "geometry invariants", geometry_invariants},
    {8, "structural sieve", structural_sieve},
    {9, "end-to-end determinism", determinism},
    {10, "performance", performance},
    {11, "level-43 stretch", level43_stretch},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  int failed = 0, ran = 0, skipped = 0, unmeasurable = 0;
  for (auto& cr : kCriteria) {
    if (!wanted.empty() && !std::count(wanted.begin(), wanted.end(), cr.id)) continue;
    ++ran;
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {Status::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Skip ? "SKIP" : "FAIL";
    std::cout << "[" << tag << "] " << std::setw(2) << cr.id << "  " << cr.name << ": " << o.detail << std::endl;
    failed += o.status == Status::Fail;
    unmeasurable += o.status == Status::Unmeasurable;
    skipped += o.status == Status::Skip;
  }
  if (!ran) {
    std::cerr << "no such criterion\n";
    return 2;
  }
  // an unmeasurable target is a failure of the full run, but a skip for ctest's per-criterion entry
  if (failed) return 1;
  if (skipped + unmeasurable == ran) return 77;
  return unmeasurable ? 1 : 0;
}
