// Copyright 2026 The nerfvfx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nerfvfx/sequence.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "support/test_support.hpp"

namespace nerfvfx {
namespace {

using testing::random_image;
using testing::Rng;

TEST(SequencePatternTest, DefaultAndExplicitWidths) {
  EXPECT_EQ(SequencePattern("a_{frame}.png", {1, 1}).path_for(7), "a_0007.png");
  EXPECT_EQ(SequencePattern("a_{frame:04}.png", {1, 1}).path_for(12), "a_0012.png");
  EXPECT_EQ(SequencePattern("dir/{frame:6}_x.png", {1, 1}).path_for(3),
            "dir/000003_x.png");
  EXPECT_EQ(SequencePattern("a_{frame:02}.png", {1, 1}).path_for(123), "a_123.png");
}

TEST(SequencePatternTest, RejectsMalformed) {
  for (const char* bad : {"a.png", "a_{frame.png", "{frame}_{frame}.png",
                          "a_{frame:x4}.png", "a_{frame:}.png", "a_{frame:00}.png",
                          "a_{frame04}.png"}) {
    try {
      SequencePattern(bad, {1, 1});
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidPattern) << bad;
    }
  }
  EXPECT_THROW(SequencePattern("a_{frame}.png", {5, 4}), Error);
}

class CompositeSequenceTest : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = testing::make_temp_dir("seq"); }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  SequencePattern pattern(const std::string& name, FrameRange range = {1, 3}) {
    return SequencePattern((dir_ / (name + "_{frame:04}.png")).string(), range);
  }

  void write_frames(const std::string& name, const std::vector<ImagePlane>& frames,
                    int first = 1) {
    for (std::size_t i = 0; i < frames.size(); ++i) {
      write_png(pattern(name).path_for(first + static_cast<int>(i)), frames[i]);
    }
  }

  CompositeJob over_job() {
    return CompositeJob{CompositeMode::Over, pattern("fg"), pattern("mask"),
                        pattern("bg"), pattern("out")};
  }

  std::filesystem::path dir_;
};

TEST_F(CompositeSequenceTest, OpaqueMaskReproducesForeground) {
  Rng rng(71);
  std::vector<ImagePlane> fg, mask, bg;
  for (int i = 0; i < 3; ++i) {
    fg.push_back(random_image(rng, 8, 8, 3));
    mask.push_back(ImagePlane(8, 8, 1, 8, 1.0f));
    bg.push_back(random_image(rng, 8, 8, 3));
  }
  write_frames("fg", fg);
  write_frames("mask", mask);
  write_frames("bg", bg);

  std::vector<int> reported;
  EXPECT_EQ(composite_sequence(over_job(), [&](int f) { reported.push_back(f); }), 3u);
  EXPECT_EQ(reported, (std::vector<int>{1, 2, 3}));
  for (int f = 1; f <= 3; ++f) {
    EXPECT_EQ(read_png(pattern("out").path_for(f)), fg[f - 1]);
    EXPECT_EQ(read_binary_file(pattern("out").path_for(f)),
              read_binary_file(pattern("fg").path_for(f)));
  }
}

TEST_F(CompositeSequenceTest, MatchesSingleFrameOps) {
  Rng rng(72);
  std::vector<ImagePlane> fg, mask, bg, shadow;
  for (int i = 0; i < 3; ++i) {
    fg.push_back(random_image(rng, 8, 8, 3));
    mask.push_back(random_image(rng, 8, 8, 1));
    bg.push_back(random_image(rng, 8, 8, 3, 16));
    shadow.push_back(random_image(rng, 8, 8, 3));
  }
  write_frames("fg", fg);
  write_frames("mask", mask);
  write_frames("bg", bg);
  write_frames("shadow", shadow);

  CompositeJob job = over_job();
  job.jobs = 3;
  ASSERT_EQ(composite_sequence(job), 3u);
  for (int f = 1; f <= 3; ++f) {
    ImagePlane expected = over(attach_alpha(fg[f - 1], mask[f - 1]), bg[f - 1]);
    expected = decode_png(encode_png(expected));
    const ImagePlane got = read_png(pattern("out").path_for(f));
    EXPECT_EQ(got.source_bit_depth, 16);
    EXPECT_EQ(got, expected);
  }

  CompositeJob shade{CompositeMode::Shadow, std::nullopt, pattern("shadow"),
                     pattern("bg"), pattern("shaded"), 0.7};
  ASSERT_EQ(composite_sequence(shade), 3u);
  for (int f = 1; f <= 3; ++f) {
    const ImagePlane expected = decode_png(
        encode_png(apply_shadow(bg[f - 1], extract_channel(shadow[f - 1], 0), 0.7)));
    EXPECT_EQ(read_png(pattern("shaded").path_for(f)), expected);
  }
}

TEST_F(CompositeSequenceTest, MissingMaskFrameStopsAfterEarlierOutputs) {
  Rng rng(73);
  std::vector<ImagePlane> frames{random_image(rng, 4, 4, 3), random_image(rng, 4, 4, 3),
                                 random_image(rng, 4, 4, 3)};
  write_frames("fg", frames);
  write_frames("bg", frames);
  write_png(pattern("mask").path_for(1), ImagePlane(4, 4, 1, 8, 0.5f));
  write_png(pattern("mask").path_for(3), ImagePlane(4, 4, 1, 8, 0.5f));

  try {
    composite_sequence(over_job());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingFrame);
    EXPECT_EQ(e.frame(), 2);
    EXPECT_EQ(e.subject(), "mask");
  }
  EXPECT_TRUE(std::filesystem::exists(pattern("out").path_for(1)));
  EXPECT_FALSE(std::filesystem::exists(pattern("out").path_for(2)));
}

TEST_F(CompositeSequenceTest, ErrorsAreAttributedToFramesWhenParallel) {
  Rng rng(74);
  std::vector<ImagePlane> fg, mask, bg;
  for (int i = 0; i < 8; ++i) {
    fg.push_back(random_image(rng, 4, 4, 3));
    mask.push_back(random_image(rng, 4, 4, 1));
    bg.push_back(random_image(rng, i == 5 ? 5 : 4, 4, 3));
  }
  write_frames("fg", fg);
  write_frames("mask", mask);
  write_frames("bg", bg);
  CompositeJob job{CompositeMode::Over, pattern("fg", {1, 8}), pattern("mask", {1, 8}),
                   pattern("bg", {1, 8}), pattern("out", {1, 8})};
  job.jobs = 4;
  std::vector<int> reported;
  try {
    composite_sequence(job, [&](int f) { reported.push_back(f); });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    EXPECT_EQ(e.frame(), 6);
  }
  EXPECT_EQ(reported, (std::vector<int>{1, 2, 3, 4, 5}));
}

TEST_F(CompositeSequenceTest, UndecodableFrame) {
  Rng rng(75);
  write_frames("fg", {random_image(rng, 4, 4, 3)});
  write_frames("bg", {random_image(rng, 4, 4, 3)});
  write_file_atomic(pattern("mask").path_for(1), std::string_view("not a png"));
  CompositeJob job{CompositeMode::Over, pattern("fg", {1, 1}), pattern("mask", {1, 1}),
                   pattern("bg", {1, 1}), pattern("out", {1, 1})};
  try {
    composite_sequence(job);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DecodeError);
    EXPECT_EQ(e.frame(), 1);
  }
}

TEST_F(CompositeSequenceTest, RangesMustAgree) {
  CompositeJob job{CompositeMode::Over, pattern("fg", {1, 3}), pattern("mask", {1, 4}),
                   pattern("bg", {1, 3}), pattern("out", {1, 3})};
  EXPECT_THROW(composite_sequence(job), Error);
}

}  // namespace
}  // namespace nerfvfx
