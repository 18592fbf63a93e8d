#include "dcg/complexity.hpp"
#include "dcg/report.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>

using dcg::ComplexityInputs;
using dcg::ComplexityMethod;
using dcg::OperationCount;

namespace {

using I = std::int64_t;

// Independent transcription of the published polynomials, one lambda per row.
OperationCount hand(ComplexityMethod m, I M, I J, I L) {
  const I M2 = M * M;
  switch (m) {
    case ComplexityMethod::CTA_CG:
      return {L * (M2 + 2 * M) + L * J * (2 * M2 + 6 * M - 3), L * (2 * M2 + 4 * M) + L * J * (3 * M2 + 4 * M - 1)};
    case ComplexityMethod::ATC_CG:
      return {L * (M2 + 3 * M - 1) + L * J * (M2 + 6 * M - 3), L * (2 * M2 + 3 * M) + L * J * (3 * M2 + 4 * M - 1)};
    case ComplexityMethod::CTA_MCG:
      return {L * (3 * M2 + 9 * M - 4), L * (4 * M2 + 9 * M - 1)};
    case ComplexityMethod::ATC_MCG:
      return {L * (4 * M2 + 9 * M - 3), L * (6 * M2 + 8 * M - 1)};
    case ComplexityMethod::ZA_CTA_CG:
    case ComplexityMethod::ZA_ATC_CG:
      return {L * (M2 + 3 * M) + L * J * (2 * M2 + 6 * M - 3), L * (2 * M2 + 5 * M) + L * J * (3 * M2 + 4 * M - 1)};
    case ComplexityMethod::ZA_CTA_MCG:
      return {L * (3 * M2 + 10 * M - 4), L * (4 * M2 + 10 * M - 1)};
    case ComplexityMethod::ZA_ATC_MCG:
      return {L * (4 * M2 + 10 * M - 3), L * (6 * M2 + 9 * M - 1)};
    case ComplexityMethod::RZA_CTA_CG:
      return {L * (M2 + 2 * M) + L * J * (2 * M2 + 8 * M - 3), L * (2 * M2 + 4 * M) + L * J * (3 * M2 + 6 * M - 1)};
    case ComplexityMethod::RZA_ATC_CG:
      return {L * (M2 + 3 * M - 1) + L * J * (2 * M2 + 8 * M - 3), L * (2 * M2 + 3 * M) + L * J * (3 * M2 + 6 * M - 1)};
    case ComplexityMethod::RZA_CTA_MCG:
      return {L * (3 * M2 + 11 * M - 4), L * (4 * M2 + 11 * M - 1)};
    case ComplexityMethod::RZA_ATC_MCG:
      return {L * (4 * M2 + 11 * M - 3), L * (6 * M2 + 10 * M - 1)};
  }
  return {};
}

OperationCount eval(ComplexityMethod m, I M, I J, I L) { return dcg::complexity_eval(m, {M, J, L}); }

struct Pair {
  ComplexityMethod cg;
  ComplexityMethod mcg;
};

constexpr Pair kCtaPairs[] = {{ComplexityMethod::CTA_CG, ComplexityMethod::CTA_MCG},
                              {ComplexityMethod::ZA_CTA_CG, ComplexityMethod::ZA_CTA_MCG},
                              {ComplexityMethod::RZA_CTA_CG, ComplexityMethod::RZA_CTA_MCG}};
constexpr Pair kAtcPairs[] = {{ComplexityMethod::ATC_CG, ComplexityMethod::ATC_MCG},
                              {ComplexityMethod::ZA_ATC_CG, ComplexityMethod::ZA_ATC_MCG},
                              {ComplexityMethod::RZA_ATC_CG, ComplexityMethod::RZA_ATC_MCG}};

}  // namespace

TEST(Complexity, CtaCgAtDeskScale) {
  EXPECT_EQ(eval(ComplexityMethod::CTA_CG, 10, 5, 20).additions, 28100);
}

TEST(Complexity, CtaMcgAtDeskScale) {
  const auto c = eval(ComplexityMethod::CTA_MCG, 10, 5, 20);
  EXPECT_EQ(c.additions, 7720);
  EXPECT_EQ(c.multiplications, 9780);
}

TEST(Complexity, MinimalInputs) {
  EXPECT_EQ(eval(ComplexityMethod::CTA_CG, 1, 1, 1).additions, 8);
  for (auto m : dcg::kAllComplexityMethods) {
    const auto c = eval(m, 1, 1, 1);
    EXPECT_GT(c.additions, 0) << dcg::to_string(m);
    EXPECT_GT(c.multiplications, 0) << dcg::to_string(m);
  }
}

TEST(Complexity, HandValuesAtSecondPoint) {
  const auto cta = eval(ComplexityMethod::CTA_CG, 32, 3, 8);
  EXPECT_EQ(cta.additions, 62392);
  EXPECT_EQ(cta.multiplications, 94184);
  const auto atc_mcg = eval(ComplexityMethod::ATC_MCG, 32, 3, 8);
  EXPECT_EQ(atc_mcg.additions, 35048);
  EXPECT_EQ(atc_mcg.multiplications, 51192);
}

TEST(Complexity, MatchesTranscriptionEverywhere) {
  for (auto m : dcg::kAllComplexityMethods) {
    for (I M = 1; M <= 64; M += 7) {
      for (I J = 1; J <= 10; ++J) {
        for (I L : {1, 3, 20}) EXPECT_EQ(eval(m, M, J, L), hand(m, M, J, L)) << dcg::to_string(m);
      }
    }
  }
}

TEST(Complexity, ModifiedRowsIndependentOfInnerIterations) {
  for (auto m : dcg::kAllComplexityMethods) {
    const bool inner = dcg::has_inner_loop(m);
    EXPECT_EQ(inner, dcg::to_string(m).ends_with("-CG")) << dcg::to_string(m);
    if (!inner) {
      for (I J = 1; J <= 10; ++J) EXPECT_EQ(eval(m, 10, J, 20), eval(m, 10, 1, 20));
    }
  }
}

TEST(Complexity, ModifiedCtaVariantsNeverCostMoreMultiplications) {
  for (const auto& p : kCtaPairs) {
    for (I M = 1; M <= 64; ++M) {
      for (I J = 1; J <= 10; ++J) {
        EXPECT_LE(eval(p.mcg, M, J, 5).multiplications, eval(p.cg, M, J, 5).multiplications)
            << dcg::to_string(p.mcg) << " M=" << M << " J=" << J;
      }
    }
  }
}

TEST(Complexity, ModifiedAtcVariantsCheaperFromTwoInnerIterations) {
  for (const auto& p : kAtcPairs) {
    for (I M = 1; M <= 64; ++M) {
      for (I J = 2; J <= 10; ++J) {
        EXPECT_LE(eval(p.mcg, M, J, 5).multiplications, eval(p.cg, M, J, 5).multiplications)
            << dcg::to_string(p.mcg) << " M=" << M << " J=" << J;
      }
    }
  }
}

// With a single inner iteration the published ATC-family MCG rows cost more
// multiplications than their CG counterparts for every filter length.
TEST(Complexity, AtcSingleIterationInversionIsPinned) {
  for (const auto& p : kAtcPairs) {
    for (I M = 1; M <= 64; ++M) {
      EXPECT_GT(eval(p.mcg, M, 1, 5).multiplications, eval(p.cg, M, 1, 5).multiplications)
          << dcg::to_string(p.mcg) << " M=" << M;
    }
  }
}

TEST(Complexity, NamesRoundTrip) {
  for (auto m : dcg::kAllComplexityMethods) EXPECT_EQ(dcg::complexity_method_from_string(dcg::to_string(m)), m);
  EXPECT_EQ(dcg::complexity_method_from_string("CTA-XG"), std::nullopt);
}

TEST(Complexity, RejectsNonPositiveInputs) {
  EXPECT_THROW(eval(ComplexityMethod::CTA_CG, 0, 1, 1), std::invalid_argument);
  EXPECT_THROW(eval(ComplexityMethod::CTA_CG, 1, 0, 1), std::invalid_argument);
  EXPECT_THROW(eval(ComplexityMethod::CTA_CG, 1, 1, 0), std::invalid_argument);
}

TEST(ComplexityTable, ListsEveryRow) {
  const std::string t = dcg::emit_complexity_table({10, 5, 20});
  for (auto m : dcg::kAllComplexityMethods) EXPECT_NE(t.find(std::string(dcg::to_string(m))), std::string::npos);
  EXPECT_NE(t.find("28100"), std::string::npos);
  EXPECT_NE(t.find("9780"), std::string::npos);
}
