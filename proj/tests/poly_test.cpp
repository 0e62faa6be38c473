#include "polyclass/poly.hpp"

#include <random>

#include <gtest/gtest.h>

#include "polyclass/generators.hpp"
#include "support.hpp"

namespace polyclass {
namespace {

using Tuples = std::vector<ExponentTuple>;

TEST(ParseSystemTest, MotivatingSystem) {
  const PolySystem s = parse_system("x^2 + x*y^2 - 3; 2*x^2*y + 5;");
  EXPECT_EQ(s.vars, (std::vector<std::string>{"x", "y"}));
  const SupportFamily f = support_family(s);
  ASSERT_EQ(f.supports.size(), 2u);
  EXPECT_EQ(f.supports[0], (Tuples{{0, 0}, {1, 2}, {2, 0}}));
  EXPECT_EQ(f.supports[1], (Tuples{{0, 0}, {2, 1}}));
  EXPECT_EQ(s.polys[0].terms[2].coeff, Rational(-3));
}

TEST(ParseSystemTest, OtherSystemOfThePair) {
  const SupportFamily f = support_family(parse_system("3 + 2*a*b^2;\nb^2 - 5 + 2*a^2*b;"));
  ASSERT_EQ(f.supports.size(), 2u);
  EXPECT_EQ(f.supports[0], (Tuples{{0, 0}, {1, 2}}));
  EXPECT_EQ(f.supports[1], (Tuples{{0, 0}, {0, 2}, {2, 1}}));
}

TEST(ParseSystemTest, CancellationIsAnError) {
  try {
    parse_system("x - x;");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 1u);
    EXPECT_NE(std::string(e.what()).find("no terms"), std::string::npos);
  }
}

TEST(ParseSystemTest, ProductMinusOne) {
  const PolySystem s = parse_system("x1*x2*x3 - 1;");
  ASSERT_EQ(s.npolys(), 1u);
  ASSERT_EQ(s.polys[0].terms.size(), 2u);
  EXPECT_EQ(s.polys[0].terms[0].expo, (ExponentTuple{1, 1, 1}));
  EXPECT_EQ(s.polys[0].terms[1].expo, (ExponentTuple{0, 0, 0}));
}

TEST(ParseSystemTest, MergesEqualTerms) {
  const PolySystem s = parse_system("x + x;");
  ASSERT_EQ(s.polys[0].terms.size(), 1u);
  EXPECT_EQ(s.polys[0].terms[0].coeff, Rational(2));
}

TEST(ParseSystemTest, RationalCoefficientsAndRepeatedFactors) {
  const PolySystem s = parse_system("3/4*x*x^2 - 1/2*y + 1/4*x^3;");
  ASSERT_EQ(s.polys[0].terms.size(), 2u);
  EXPECT_EQ(s.polys[0].terms[0].expo, (ExponentTuple{3, 0}));
  EXPECT_EQ(s.polys[0].terms[0].coeff, Rational(1));
  EXPECT_EQ(s.polys[0].terms[1].coeff, Rational(-1, 2));
}

TEST(ParseSystemTest, HeaderFixesVariableOrder) {
  const PolySystem s = parse_system("vars: z, y, x;  # declared order\nx + y;\n");
  EXPECT_EQ(s.vars, (std::vector<std::string>{"z", "y", "x"}));
  EXPECT_EQ(s.polys[0].terms[0].expo, (ExponentTuple{0, 0, 1}));
}

TEST(ParseSystemTest, ConstantOverDeclaredVariables) {
  const SupportFamily f = support_family(parse_system("vars: x;\n7;"));
  EXPECT_EQ(f.nvars, 1u);
  EXPECT_EQ(f.supports, (std::vector<Tuples>{{{0}}}));
}

TEST(ParseSystemTest, Errors) {
  auto error_at = [](const char* text) -> std::pair<std::size_t, std::size_t> {
    try {
      parse_system(text);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  EXPECT_EQ(error_at("vars: x, x;\nx;"), (std::pair<std::size_t, std::size_t>{1, 10}));
  EXPECT_EQ(error_at("x^2147483648;"), (std::pair<std::size_t, std::size_t>{1, 3}));
  EXPECT_EQ(error_at("x^2147483647*x;"), (std::pair<std::size_t, std::size_t>{1, 14}));
  EXPECT_EQ(error_at("x + 1.5;"), (std::pair<std::size_t, std::size_t>{1, 5}));
  EXPECT_EQ(error_at("2x;"), (std::pair<std::size_t, std::size_t>{1, 2}));
  EXPECT_EQ(error_at("x*(y+1);"), (std::pair<std::size_t, std::size_t>{1, 3}));
  EXPECT_EQ(error_at("x + y"), (std::pair<std::size_t, std::size_t>{1, 6}));
  EXPECT_EQ(error_at("x;\ny^-1;"), (std::pair<std::size_t, std::size_t>{2, 3}));
  EXPECT_EQ(error_at("vars: x;\ny;"), (std::pair<std::size_t, std::size_t>{2, 1}));
  EXPECT_EQ(error_at("1/0;"), (std::pair<std::size_t, std::size_t>{1, 3}));
  EXPECT_EQ(error_at("# nothing\n"), (std::pair<std::size_t, std::size_t>{2, 1}));
  EXPECT_NO_THROW(parse_system("x^2147483647;"));
}

TEST(FormatSystemTest, Constant) { EXPECT_EQ(format_system(parse_system("5;")), "5;"); }

TEST(FormatSystemTest, RoundTripsBenchmarks) {
  for (const PolySystem& s : {gen_cyclic(3), gen_nash(4), gen_katsura(3), parse_system("x^2 + x*y^2 - 3; 2*x^2*y + 5;"),
                              parse_system("-1/3*a^5*b + 7/2; -b;")}) {
    EXPECT_EQ(parse_system(format_system(s)), s) << format_system(s);
  }
}

TEST(FormatSystemTest, RoundTripsRandomSystems) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const PolySystem s = gen_random(testing::draw(rng, 1, 5), testing::draw(rng, 1, 4), testing::draw(rng, 1, 6),
                                    testing::draw(rng, 1, 5), rng());
    ASSERT_EQ(parse_system(format_system(s)), s) << format_system(s);
  }
}

TEST(PermuteSystemTest, IdentityAndInverse) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const PolySystem s = gen_random(testing::draw(rng, 1, 5), testing::draw(rng, 1, 4), 4, 3, rng());
    std::vector<std::size_t> vid(s.nvars()), eid(s.npolys());
    std::iota(vid.begin(), vid.end(), std::size_t{0});
    std::iota(eid.begin(), eid.end(), std::size_t{0});
    EXPECT_EQ(permute_system(s, vid, eid), s);

    const auto vp = testing::random_perm(s.nvars(), rng);
    const auto ep = testing::random_perm(s.npolys(), rng);
    const PolySystem there = permute_system(s, vp, ep);
    EXPECT_EQ(permute_system(there, testing::inverse(vp), testing::inverse(ep)), s);
  }
}

TEST(PermuteSystemTest, MapsMotivatingPairOntoEachOther) {
  const PolySystem left = parse_system("x^2 + x*y^2 - 3; 2*x^2*y + 5;");
  const PolySystem right = parse_system("3 + 2*a*b^2; b^2 - 5 + 2*a^2*b;");
  const std::vector<std::size_t> swap_vars{1, 0};
  const std::vector<std::size_t> swap_eqs{1, 0};
  const PolySystem moved = permute_system(left, swap_vars, swap_eqs);
  EXPECT_EQ(support_family(moved), support_family(right));
}

TEST(PermuteSystemTest, SupportFamilyCommutesWithPermutation) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const PolySystem s = gen_random(testing::draw(rng, 1, 5), testing::draw(rng, 1, 4), 5, 3, rng());
    const auto vp = testing::random_perm(s.nvars(), rng);
    const auto ep = testing::random_perm(s.npolys(), rng);
    const SupportFamily direct = support_family(permute_system(s, vp, ep));
    SupportFamily expected = permute_family(support_family(s), vp);
    std::vector<std::vector<ExponentTuple>> reordered(expected.supports.size());
    for (std::size_t j = 0; j < ep.size(); ++j) reordered[ep[j]] = expected.supports[j];
    expected.supports = reordered;
    EXPECT_EQ(direct, expected);
  }
}

TEST(PermuteSystemTest, SizeMismatch) {
  const PolySystem s = parse_system("x + y;");
  const std::vector<std::size_t> three{0, 1, 2};
  const std::vector<std::size_t> one{0};
  const std::vector<std::size_t> not_bijective{0, 0};
  EXPECT_THROW(permute_system(s, three, one), InvalidArgument);
  EXPECT_THROW(permute_system(s, not_bijective, one), InvalidArgument);
}

TEST(SupportFamilyTest, DuplicatePolynomialsAreKept) {
  const SupportFamily f = support_family(parse_system("x + 1; 2*x - 3;"));
  ASSERT_EQ(f.supports.size(), 2u);
  EXPECT_EQ(f.supports[0], f.supports[1]);
  EXPECT_FALSE(same_family(f, support_family(parse_system("x + 1;"))));
}

}  // namespace
}  // namespace polyclass
