#include <gtest/gtest.h>

#include <map>
#include <numbers>

#include "cspec/lvalues.hpp"

using namespace cspec;

TEST(LValueClosed, MagnitudeLawModTwentyFive) {
  const auto g = build_unit_group(5, group_level::mod_b_squared);
  for (const character& chi : enumerate_family(g, family::primitive_odd)) {
    const l_value l = l_value_closed(chi);
    EXPECT_EQ(l.method, l_method::closed_form);
    EXPECT_GT(std::abs(l.value), 0.0);
    EXPECT_NEAR(std::abs(bernoulli_b1(chi)), 5.0 / std::numbers::pi * std::abs(l.value), 1e-10);
  }
}

TEST(LValueClosed, QuadraticCharacters) {
  // h(-3) = 1 with six units gives L(1) = pi / (3 sqrt 3); h(-7) = 1 gives pi / sqrt 7
  const character mod3(build_unit_group(3, group_level::mod_b), 1);
  EXPECT_NEAR(l_value_closed(mod3).value.real(), std::numbers::pi / (3.0 * std::sqrt(3.0)), 1e-14);
  EXPECT_NEAR(l_value_closed(mod3).value.imag(), 0.0, 1e-14);
  const character mod7(build_unit_group(7, group_level::mod_b), 3);
  EXPECT_NEAR(l_value_closed(mod7).value.real(), std::numbers::pi / std::sqrt(7.0), 1e-14);
}

TEST(LValueClosed, RejectsEvenOrImprimitive) {
  const auto g = build_unit_group(5, group_level::mod_b_squared);
  for (std::int64_t j : {0, 2, 5, 15}) {
    try {
      l_value_closed(character(g, j));
      FAIL() << "j=" << j;
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::not_primitive_odd);
    }
  }
}

TEST(LValueSeries, AgreesWithClosedForm) {
  for (std::int64_t b : {3, 5}) {
    const auto g = build_unit_group(b, group_level::mod_b_squared);
    for (const character& chi : enumerate_family(g, family::primitive_odd)) {
      const l_value series = l_value_series(chi, 1'000'000);
      const l_value closed = l_value_closed(chi);
      EXPECT_LE(std::abs(series.value - closed.value), series.tail_bound + 1e-9);
      EXPECT_LE(series.max_partial_sum, static_cast<double>(g->order()));
    }
  }
  const character mod3(build_unit_group(3, group_level::mod_b), 1);
  const l_value s3 = l_value_series(mod3, 1'000'000);
  EXPECT_LE(std::abs(s3.value - l_value_closed(mod3).value), s3.tail_bound + 1e-9);
}

TEST(LValueSeries, TailBoundWhenPeriodDividesCutoff) {
  const auto g = build_unit_group(5, group_level::mod_b_squared);
  const character chi(g, 1);
  const l_value s = l_value_series(chi, 25 * 40'000);
  EXPECT_LE(s.tail_bound, s.max_partial_sum / static_cast<double>(s.truncation));
}

TEST(LValueSeries, ConjugateSymmetry) {
  const auto g = build_unit_group(7, group_level::mod_b_squared);
  const character chi(g, 1);
  EXPECT_LT(std::abs(l_value_series(chi.conj(), 100'000).value - std::conj(l_value_series(chi, 100'000).value)), 1e-9);
}

TEST(LValueSeries, Errors) {
  const auto g = build_unit_group(5, group_level::mod_b_squared);
  try {
    l_value_series(character(g, 0), 1'000'000);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::principal_character);
  }
  EXPECT_THROW(l_value_series(character(g, 1), 624), error);
}

TEST(ReducedForms, SmallDiscriminants) {
  EXPECT_EQ(reduced_form_count(-3), 1);
  EXPECT_EQ(reduced_form_count(-4), 1);
  EXPECT_EQ(reduced_form_count(-7), 1);
  EXPECT_EQ(reduced_form_count(-20), 2);
  EXPECT_EQ(reduced_form_count(-23), 3);
  EXPECT_THROW(reduced_form_count(-6), error);
  EXPECT_THROW(reduced_form_count(5), error);
}

TEST(ClassNumber, BothRoutesAgree) {
  // h(-p) for primes p = 3 mod 4, 7 <= p <= 163, by independent reduced-form enumeration
  const std::map<std::int64_t, std::int64_t> expected{
      {7, 1},  {11, 1}, {19, 1}, {23, 3}, {31, 3},  {43, 1},  {47, 5},  {59, 3},  {67, 1},  {71, 7},
      {79, 5}, {83, 3}, {103, 5}, {107, 3}, {127, 5}, {131, 5}, {139, 3}, {151, 7}, {163, 1}};
  for (auto [b, h] : expected) {
    const class_number_record r = class_number_check(b);
    EXPECT_EQ(r.h_from_forms, h) << "b=" << b;
    EXPECT_EQ(r.h_from_l, h) << "b=" << b;
    EXPECT_TRUE(r.agrees());
    EXPECT_LT(r.rounding_distance(), 1e-6);
    EXPECT_EQ(r.discriminant, -b);
  }
}

TEST(ClassNumber, RejectsBadBases) {
  for (std::int64_t b : {3, 5, 13}) {
    try {
      class_number_check(b);
      FAIL() << "b=" << b;
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::bad_discriminant);
    }
  }
  EXPECT_THROW(class_number_check(15), error);
}
