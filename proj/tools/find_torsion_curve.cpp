// Random search for a swap-symmetric smooth plane quartic over F_p on which
// c0 = (1:0:0) and c_inf = (0:1:0) differ by a class of exact order n.
// Prints a curve spec (integer coefficients in [0, p)) on stdout.
//
// Exact order n is checked as: n(c0 - c_inf) principal, (n/q)(c0 - c_inf)
// not principal for every prime q | n.

#include <CLI11.hpp>

#include <iostream>
#include <random>

#include "lonesieve/marked_curve.hpp"
#include "lonesieve/lineq.hpp"

using namespace lonesieve;

namespace {

bool principal_multiple(const PlaneCurve& C, const Place& a, const Place& b, int k) {
  return lin_equiv(EffectiveDivisor(a, k), EffectiveDivisor(b, k), C).equivalent;
}

std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search for a marked quartic with a torsion class of given order"};
  std::uint32_t p = 41;
  int n = 27;
  std::uint64_t seed = 1;
  long tries = 200000;
  app.add_option("--prime", p, "Odd prime");
  app.add_option("--order", n, "Exact order of [c0 - c_inf]");
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--tries", tries, "Candidates to test");
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> coef(0, p - 1);
  // orbit representatives of the swap on degree-4 monomials, without x^4 and y^4
  std::vector<Exponent> reps;
  for (auto& e : monomials(4))
    if (e[0] >= e[1] && !(e[0] == 4 || e[1] == 4)) reps.push_back(e);

  const GaloisField* Fp = prime_field(p);
  Point c0{Fp->one(), Fp->zero(), Fp->zero()}, cinf{Fp->zero(), Fp->one(), Fp->zero()};
  for (long t = 0; t < tries; ++t) {
    Form F(p, 4);
    for (auto& e : reps) {
      std::uint32_t c = coef(rng);
      F.set(e, c);
      F.set({e[1], e[0], e[2]}, c);
    }
    if (F.coeff({0, 0, 4}) == 0) continue;
    std::optional<PlaneCurve> C;
    try {
      C.emplace(F);
    } catch (const Error&) {
      continue;
    }
    Place a = place_of(c0), b = place_of(cinf);
    if (!principal_multiple(*C, a, b, n)) continue;
    bool exact = true;
    for (int q : prime_divisors(n))
      if (principal_multiple(*C, a, b, n / q)) exact = false;
    if (!exact) continue;
    std::cerr << "found after " << t + 1 << " candidates\n";
    Json coeffs = Json::array();
    for (auto& e : monomials(4))
      if (auto c = F.coeff(e)) coeffs.push_back({e[0], e[1], e[2], c});
    Json spec{{"label", "synthetic-quartic-f" + std::to_string(p) + "-n" + std::to_string(n)},
              {"degree", 4},
              {"coeffs", coeffs},
              {"involution", {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}},
              {"marked_points", {{"c0", {1, 0, 0}}, {"cinf", {0, 1, 0}}}},
              {"torsion_order", n},
              {"metadata",
               {{"note", "integer model searched mod " + std::to_string(p) + "; the order " + std::to_string(n) +
                             " of [c0 - c_inf] is certified only mod " + std::to_string(p)},
                {"seed", seed}}}};
    std::cout << spec.dump(2) << "\n";
    return 0;
  }
  std::cerr << "no curve found in " << tries << " candidates\n";
  return 1;
}
