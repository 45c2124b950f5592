/*
 * Copyright 2026 The rankfaith Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "rankfaith/errors.h"
#include "rankfaith/prompt/parser.h"
#include "rankfaith/prompt/protocol.h"
#include "rankfaith/prompt/template.h"
#include "rankfaith/util/rng.h"

namespace rankfaith::prompt {
namespace {

using attribution::RankedExplanation;
using Names = std::vector<std::string>;

std::size_t Count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

const Names kFeatures{"loan_amnt", "term", "int_rate", "grade", "emp_length",
                      "home_ownership", "annual_inc", "purpose", "dti", "revol_util"};

InstanceContext Context(std::int64_t id) {
  InstanceContext ctx;
  ctx.instance_id = id;
  ctx.model_tag = "gbdt";
  const Names values{"$12,000.00", "36 months", "13.49%", "C",        "10+ years",
                     "RENT",       "$54,000.00", "debt_consolidation", "18.20", "61.3%"};
  for (std::size_t i = 0; i < kFeatures.size(); ++i) ctx.features.push_back({kFeatures[i], values[i]});
  ctx.observed = 1;
  ctx.observed_label = "Charged Off";
  ctx.probability = 0.372519;
  return ctx;
}

RankedExplanation Ranking(std::uint64_t seed) {
  Names order = kFeatures;
  util::Rng rng(seed);
  rng.Shuffle(order);
  RankedExplanation r;
  double v = 1.0;
  for (const auto& name : order) {
    r.push_back({name, (r.size() % 2 ? -v : v)});
    v *= 0.8;
  }
  return r;
}

std::string ReferenceBlock(const std::string& text) {
  const auto begin = text.find(kReferenceBegin);
  const auto end = text.find(kReferenceEnd);
  EXPECT_NE(begin, std::string::npos);
  EXPECT_NE(end, std::string::npos);
  return text.substr(begin + kReferenceBegin.size(), end - begin - kReferenceBegin.size());
}

TEST(TemplateTest, ModeNamesRoundTrip) {
  for (Mode m : {Mode::kTranslator, Mode::kZeroShot, Mode::kFewShot}) {
    EXPECT_EQ(ModeFromName(ModeName(m)), m);
    EXPECT_FALSE(TemplateText(m).empty());
  }
  EXPECT_EQ(ModeName(Mode::kZeroShot), "zero_shot");
}

TEST(TemplateTest, RendersSlotsAndFailsClosed) {
  EXPECT_EQ(RenderTemplate("a {{x}} b {{y}}{{x}}", {{"x", "1"}, {"y", "2"}}), "a 1 b 21");
  EXPECT_THROW(RenderTemplate("a {{x}}", {}), FormatError);
  EXPECT_THROW(RenderTemplate("a {{x", {{"x", "1"}}), FormatError);
}

TEST(TranslatorTest, ContractStatesLineCount) {
  InstanceContext ctx = Context(7);
  const auto spec = BuildTranslatorPrompt(ctx, Ranking(1), 10);
  EXPECT_NE(spec.rendered_text.find("exactly 10 lines"), std::string::npos);
  EXPECT_EQ(OutputContract(20).find("exactly 20 lines") != std::string::npos, true);
  EXPECT_EQ(spec.mode, Mode::kTranslator);
  EXPECT_EQ(spec.k_out, 10);
  EXPECT_EQ(spec.vocabulary, kFeatures);
}

TEST(TranslatorTest, ProbabilityHasFourDecimals) {
  const auto spec = BuildTranslatorPrompt(Context(7), Ranking(1), 5);
  EXPECT_NE(spec.rendered_text.find("Predicted probability of default: 0.3725\n"),
            std::string::npos);
}

TEST(TranslatorTest, ReferenceBlockNamesEveryFeatureOnce) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto ref = Ranking(seed);
    const auto spec = BuildTranslatorPrompt(Context(3), ref, 4);
    const std::string block = ReferenceBlock(spec.rendered_text);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      // Whole-line match: "<rank>. <name> (".
      EXPECT_EQ(Count(block, ". " + ref[i].name + " ("), 1u) << ref[i].name;
      EXPECT_NE(block.find(std::to_string(i + 1) + ". " + ref[i].name + " ("), std::string::npos);
    }
    EXPECT_EQ(Count(block, "\n"), ref.size() + 1);
  }
}

TEST(TranslatorTest, EveryFeatureValueIsShown) {
  const InstanceContext ctx = Context(3);
  const auto spec = BuildZeroShotPrompt(ctx, 10);
  for (const auto& [name, value] : ctx.features) {
    EXPECT_NE(spec.rendered_text.find("- " + name + ": " + value + "\n"), std::string::npos);
  }
  EXPECT_NE(spec.rendered_text.find("Observed outcome: Charged Off (y = 1)"), std::string::npos);
}

TEST(TranslatorTest, RejectsBadInputs) {
  const InstanceContext ctx = Context(3);
  EXPECT_THROW(BuildTranslatorPrompt(ctx, Ranking(1), 0), InvalidArgument);
  EXPECT_THROW(BuildTranslatorPrompt(ctx, Ranking(1), 11), InvalidArgument);
  auto partial = Ranking(1);
  partial.pop_back();
  EXPECT_THROW(BuildTranslatorPrompt(ctx, partial, 5), InvalidArgument);
  auto renamed = Ranking(1);
  renamed[0].name = "fico";
  EXPECT_THROW(BuildTranslatorPrompt(ctx, renamed, 5), InvalidArgument);
}

TEST(ZeroShotTest, HasNoReferenceOrExamples) {
  const auto spec = BuildZeroShotPrompt(Context(3), 10);
  EXPECT_EQ(spec.rendered_text.find(kReferenceBegin), std::string::npos);
  EXPECT_EQ(spec.rendered_text.find("Example "), std::string::npos);
  EXPECT_FALSE(spec.reference.has_value());
  EXPECT_TRUE(spec.demonstrations.empty());
  EXPECT_NE(spec.rendered_text.find("exactly 10 lines"), std::string::npos);
}

TEST(FewShotTest, RendersTwoDemonstrationBlocks) {
  const std::vector<Demonstration> demos{{Context(100), Ranking(5)}, {Context(200), Ranking(6)}};
  const auto spec = BuildFewShotPrompt(Context(3), demos, 10);
  EXPECT_EQ(Count(spec.rendered_text, "\nRanking:\n"), 2u);
  EXPECT_NE(spec.rendered_text.find("Example 1\nInstance: 100\n"), std::string::npos);
  EXPECT_NE(spec.rendered_text.find("Example 2\nInstance: 200\n"), std::string::npos);
  EXPECT_EQ(Count(spec.rendered_text, "Instance: "), 3u);
  EXPECT_EQ(spec.rendered_text.find(kReferenceBegin), std::string::npos);
  // Each demo ranking appears as a numbered list.
  Names first;
  for (const auto& f : demos[0].ranking) first.push_back(f.name);
  EXPECT_NE(spec.rendered_text.find("Ranking:\n" + RenderNumberedList(first, 10)),
            std::string::npos);
  EXPECT_EQ(spec.demonstrations.size(), 2u);
}

TEST(FewShotTest, RejectsCollisionAndWrongCount) {
  const std::vector<Demonstration> colliding{{Context(100), Ranking(5)}, {Context(3), Ranking(6)}};
  EXPECT_THROW(BuildFewShotPrompt(Context(3), colliding, 10), DemoCollision);
  const std::vector<Demonstration> one{{Context(100), Ranking(5)}};
  EXPECT_THROW(BuildFewShotPrompt(Context(3), one, 10), InvalidArgument);
  const std::vector<Demonstration> three{
      {Context(100), Ranking(5)}, {Context(101), Ranking(5)}, {Context(102), Ranking(5)}};
  EXPECT_THROW(BuildFewShotPrompt(Context(3), three, 10), InvalidArgument);
}

TEST(PromptTest, RenderingIsDeterministic) {
  const std::vector<Demonstration> demos{{Context(100), Ranking(5)}, {Context(200), Ranking(6)}};
  EXPECT_EQ(BuildFewShotPrompt(Context(3), demos, 10).rendered_text,
            BuildFewShotPrompt(Context(3), demos, 10).rendered_text);
  EXPECT_EQ(BuildTranslatorPrompt(Context(3), Ranking(9), 8).rendered_text,
            BuildTranslatorPrompt(Context(3), Ranking(9), 8).rendered_text);
}

TEST(ParserTest, PlainNumberedList) {
  const auto p = ParseRanking("1. dti\n2. grade\n3. annual_inc", kFeatures, 10);
  EXPECT_EQ(p.names, (Names{"dti", "grade", "annual_inc"}));
  EXPECT_TRUE(p.violations.empty());
}

TEST(ParserTest, UnknownFeatureIsSkipped) {
  const auto p = ParseRanking("1. dti\n2. credit_karma_score\n3. grade", kFeatures, 10);
  EXPECT_EQ(p.names, (Names{"dti", "grade"}));
  ASSERT_EQ(p.violations.size(), 1u);
  EXPECT_EQ(p.violations[0].kind, ViolationKind::kUnknownFeature);
  EXPECT_EQ(p.violations[0].line, 2);
}

TEST(ParserTest, DuplicateKeepsFirst) {
  const auto p = ParseRanking("1. dti\n2. grade\n3. term\n4. dti", kFeatures, 10);
  EXPECT_EQ(p.names, (Names{"dti", "grade", "term"}));
  ASSERT_EQ(p.violations.size(), 1u);
  EXPECT_EQ(p.violations[0].kind, ViolationKind::kDuplicate);
  EXPECT_EQ(p.violations[0].line, 4);
}

TEST(ParserTest, ProseAroundBlockIsIgnoredButNotInside) {
  const std::string reply =
      "Sure, here is the ranking:\n\n1. dti\n2. grade\nnote: close call\n3. term\n\nHope this helps.";
  const auto p = ParseRanking(reply, kFeatures, 10);
  EXPECT_EQ(p.names, (Names{"dti", "grade", "term"}));
  ASSERT_EQ(p.violations.size(), 1u);
  EXPECT_EQ(p.violations[0].kind, ViolationKind::kMalformedLine);
  EXPECT_EQ(p.violations[0].line, 5);
}

TEST(ParserTest, ToleratesCommonDecoration) {
  const auto p = ParseRanking("**1.** dti (+0.4123)\n2) grade: strong effect\n 3. term - long", kFeatures, 10);
  EXPECT_EQ(p.names, (Names{"dti", "grade", "term"}));
  EXPECT_TRUE(p.violations.empty());
}

TEST(ParserTest, TruncatesToKOut) {
  const auto p = ParseRanking("1. dti\n2. grade\n3. term\n4. purpose", kFeatures, 2);
  EXPECT_EQ(p.names, (Names{"dti", "grade"}));
  ASSERT_EQ(p.violations.size(), 1u);
  EXPECT_EQ(p.violations[0].kind, ViolationKind::kTruncated);
  EXPECT_EQ(p.violations[0].line, 0);
}

TEST(ParserTest, NothingAcceptedIsUnparseable) {
  EXPECT_THROW(ParseRanking("I cannot help with that.", kFeatures, 10), UnparseableReply);
  EXPECT_THROW(ParseRanking("1. fico\n2. zip", kFeatures, 10), UnparseableReply);
  EXPECT_THROW(ParseRanking("", kFeatures, 10), UnparseableReply);
}

TEST(ParserTest, ViolationNamesRoundTrip) {
  for (auto k : {ViolationKind::kUnknownFeature, ViolationKind::kDuplicate,
                 ViolationKind::kMalformedLine, ViolationKind::kTruncated}) {
    EXPECT_EQ(ViolationKindFromName(ViolationKindName(k)), k);
  }
  EXPECT_EQ(ViolationKindName(ViolationKind::kUnknownFeature), "unknown_feature");
}

TEST(ParserTest, RenderedListRoundTrips) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Names names;
    for (const auto& f : Ranking(seed)) names.push_back(f.name);
    for (std::size_t k = 1; k <= names.size(); ++k) {
      const auto p = ParseRanking(RenderNumberedList(names, k), kFeatures, static_cast<int>(k));
      EXPECT_EQ(p.names, Names(names.begin(), names.begin() + static_cast<long>(k)));
      EXPECT_TRUE(p.violations.empty());
      for (const auto& n : p.names) {
        EXPECT_NE(std::find(kFeatures.begin(), kFeatures.end(), n), kFeatures.end());
      }
    }
  }
}

TEST(DemoSelectionTest, PicksMostConfidentCorrectPerClass) {
  const std::vector<DemoCandidate> pool{
      {10, 1, 0.95}, {11, 1, 0.40}, {12, 1, 0.95}, {20, 0, 0.05},
      {21, 0, 0.70}, {22, 0, 0.01}, {23, 1, 0.80},
  };
  const auto picked = SelectDemonstrations(pool, 0.5);
  EXPECT_EQ(picked[0], 10);  // tie with 12 broken by lower id
  EXPECT_EQ(picked[1], 22);
  EXPECT_EQ(SelectDemonstrations(pool, 0.5), picked);
}

TEST(DemoSelectionTest, FallsBackToIncorrectWhenNoCorrectExists) {
  const std::vector<DemoCandidate> pool{{1, 1, 0.2}, {2, 1, 0.3}, {3, 0, 0.1}};
  EXPECT_EQ(SelectDemonstrations(pool, 0.5)[0], 2);
}

TEST(DemoSelectionTest, SingleClassPoolThrows) {
  const std::vector<DemoCandidate> pool{{1, 1, 0.9}, {2, 1, 0.8}};
  EXPECT_THROW(SelectDemonstrations(pool, 0.5), InsufficientClass);
}

}  // namespace
}  // namespace rankfaith::prompt
