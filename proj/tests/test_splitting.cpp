#include <gtest/gtest.h>

#include "lonesieve/splitting.hpp"

using namespace lonesieve;

namespace {

const IntPoly kCubic{10, -8, 0, 1};

QuadraticFieldSpec K163() { return QuadraticFieldSpec::make(-163); }
CubicFieldSpec B163() { return CubicFieldSpec::make(kCubic); }

// Oracle: a^2 + |d| b^2 = 4p with b >= 1, by exhaustive search.
bool norm_form_solvable(std::int64_t ad, std::int64_t p) {
  for (std::int64_t b = 1; ad * b * b <= 4 * p; ++b)
    for (std::int64_t a = 0; a * a + ad * b * b <= 4 * p; ++a)
      if (a * a + ad * b * b == 4 * p) return true;
  return false;
}

// Oracle: rootless cubic mod p by exhaustive scan.
bool cubic_has_root(const IntPoly& g, std::int64_t p) {
  for (std::int64_t x = 0; x < p; ++x) {
    std::int64_t v = 0;
    for (int i = 3; i >= 0; --i) v = mod_of(v * x + g[i], static_cast<std::uint32_t>(p));
    if (v == 0) return true;
  }
  return false;
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidInput;  // sentinel; callers expect a specific kind
}

}  // namespace

TEST(Fields, SpecsValidate) {
  EXPECT_TRUE(K163().class_number_one);
  EXPECT_TRUE(QuadraticFieldSpec::make(-43).class_number_one);
  EXPECT_FALSE(QuadraticFieldSpec::make(-5).class_number_one);
  EXPECT_EQ(class_number(-4 * 5), 2);
  EXPECT_EQ(class_number(-23), 3);
  EXPECT_EQ(class_number(-652), 3);  // the order Z[sqrt(-163)]
  EXPECT_EQ(B163().disc, -652);
  EXPECT_EQ(B163().disc, -4 * (-8) * (-8) * (-8) - 27 * 10 * 10);
  EXPECT_TRUE(B163().irreducible);
  EXPECT_FALSE(CubicFieldSpec::make({-1, 0, 0, 1}).irreducible);
  EXPECT_THROW(QuadraticFieldSpec::make(-12), Error);
  EXPECT_THROW(QuadraticFieldSpec::make(5), Error);
}

TEST(QuadraticSplitting, Examples) {
  EXPECT_EQ(quadratic_splitting(K163(), 3), Splitting::Inert);
  EXPECT_EQ(quadratic_splitting(K163(), 41), Splitting::Split);
  EXPECT_TRUE(norm_form_solvable(163, 41));
  EXPECT_EQ(quadratic_splitting(K163(), 163), Splitting::Ramified);
  EXPECT_EQ(kind_of([] { quadratic_splitting(K163(), 2); }), ErrorKind::EvenPrime);
}

TEST(MinSplitPrime, ClassNumberOneFields) {
  EXPECT_EQ(min_split_prime(K163()), 41u);
  EXPECT_EQ(min_split_prime(QuadraticFieldSpec::make(-43)), 11u);
  EXPECT_EQ(min_split_prime(QuadraticFieldSpec::make(-67)), 17u);
  for (std::int64_t d : {-3, -7, -11, -19, -43, -67, -163}) {
    auto K = QuadraticFieldSpec::make(d);
    std::uint32_t p = min_split_prime(K);
    EXPECT_GE(p, static_cast<std::uint32_t>((-d + 3) / 4));
    EXPECT_TRUE(norm_form_solvable(-d, p));
    for (std::uint32_t q = 3; q < p; q += 2)
      if (is_prime(q)) {
        EXPECT_NE(quadratic_splitting(K, q), Splitting::Split) << d << " " << q;
      }
  }
  EXPECT_EQ(kind_of([] { min_split_prime(QuadraticFieldSpec::make(-5)); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { min_split_prime(QuadraticFieldSpec::make(-163), 40); }), ErrorKind::SearchExhausted);
}

TEST(DoomedAt, Examples) {
  auto r37 = doomed_at(K163(), B163(), 37);
  EXPECT_TRUE(r37.doomed);
  EXPECT_EQ(r37.reason, "inert-in-K");
  auto r41 = doomed_at(K163(), B163(), 41);
  EXPECT_FALSE(r41.doomed);
  EXPECT_EQ(r41.profile_in_B, std::vector<int>{3});
  EXPECT_FALSE(cubic_has_root(kCubic, 41));
  auto r167 = doomed_at(K163(), B163(), 167);
  EXPECT_TRUE(r167.doomed);
  EXPECT_EQ(r167.profile_in_B, (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(r167.splitting_in_K, Splitting::Split);
  EXPECT_EQ(kind_of([] { doomed_at(K163(), B163(), 163); }), ErrorKind::RamifiedPrime);
}

TEST(DoomRange, Examples) {
  auto r40 = doom_range_report(K163(), B163(), 40);
  ASSERT_EQ(r40.rows.size(), 11u);  // 3,5,7,...,37
  for (auto& row : r40.rows) EXPECT_TRUE(row.doomed) << row.p;
  EXPECT_FALSE(r40.smallest_non_doomed.has_value());
  auto r200 = doom_range_report(K163(), B163(), 200);
  ASSERT_TRUE(r200.smallest_non_doomed.has_value());
  EXPECT_EQ(*r200.smallest_non_doomed, 41u);
  auto r170 = doom_range_report(K163(), B163(), 170);
  bool seen = false;
  for (auto& row : r170.rows)
    if (row.p == 167) {
      seen = true;
      EXPECT_TRUE(row.doomed);
      EXPECT_EQ(row.profile_in_B, (std::vector<int>{1, 1, 1}));
    }
  EXPECT_TRUE(seen);
  EXPECT_EQ(r170.excluded, std::vector<std::uint32_t>{163});
}

TEST(DoomRange, QuadraticOnly) {
  auto r = doom_range_report(QuadraticFieldSpec::make(-43), std::nullopt, 50);
  EXPECT_EQ(*r.smallest_non_doomed, 11u);
  for (auto& row : r.rows)
    if (row.p < 11) {
      EXPECT_TRUE(row.doomed);
    }
}

TEST(NoDegreeSix, Examples) {
  EXPECT_TRUE(no_degree_six_check(K163(), B163(), 1000));
  EXPECT_TRUE(no_degree_six_check(K163(), B163(), 167));
  EXPECT_EQ(kind_of([] { no_degree_six_check(K163(), CubicFieldSpec::make({-1, 0, 0, 1}), 100); }),
            ErrorKind::IncompatibleFields);
}

TEST(NoDegreeSix, InvariantsUpTo1000) {
  auto K = K163();
  auto B = B163();
  for (std::uint32_t p = 3; p <= 1000; p += 2) {
    if (!is_prime(p) || p == 163) continue;
    auto s = quadratic_splitting(K, p);
    bool b_inert = !cubic_has_root(kCubic, p);
    EXPECT_FALSE(s == Splitting::Inert && b_inert) << p;
    if (s == Splitting::Inert) {
      EXPECT_TRUE(doomed_at(K, B, p).doomed) << p;
    }
    EXPECT_EQ(doomed_at(K, B, p).doomed, !b_inert) << p;
  }
}

TEST(TorsionOrder, Examples) {
  EXPECT_EQ(x0_torsion_order(163), 27u);
  EXPECT_EQ(x0_torsion_order(43), 7u);
  EXPECT_EQ(x0_torsion_order(67), 11u);
  EXPECT_EQ(kind_of([] { x0_torsion_order(91); }), ErrorKind::CompositeLevel);
  for (std::uint64_t N = 11; N < 2000; ++N) {
    if (!is_prime(N)) continue;
    std::uint64_t n = x0_torsion_order(N);
    EXPECT_EQ((N - 1) % n, 0u);
    EXPECT_EQ(12 % ((N - 1) / n), 0u);  // denominator divides 12
  }
}
