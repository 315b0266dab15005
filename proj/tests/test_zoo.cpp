// Copyright 2026 The shadowkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "shadowkit/errors.hpp"
#include "shadowkit/zoo.hpp"

namespace shadowkit {
namespace {

std::vector<Point> image_of(const SystemMap& f) { return {f.image().begin(), f.image().end()}; }

TEST(Zoo, RotationIsACycleOnTheCircle) {
  auto f = build_zoo("rotation:m=4,k=1");
  EXPECT_EQ(image_of(f), (std::vector<Point>{1, 2, 3, 0}));
  EXPECT_EQ(f.space()->distance(0, 3), Rational(1, 4));
  EXPECT_EQ(f.space()->distance(0, 2), Rational(1, 2));
  EXPECT_EQ(f.space()->diameter(), Rational(1, 2));
}

TEST(Zoo, TentRoundsToNearestGridPoint) {
  EXPECT_EQ(image_of(build_zoo("tent:m=4")), (std::vector<Point>{0, 2, 2, 0}));
  EXPECT_EQ(image_of(build_zoo("tent:m=5")), (std::vector<Point>{0, 2, 4, 2, 0}));
  auto f = build_zoo("tent:m=4");
  EXPECT_EQ(f.space()->distance(0, 3), Rational(1));
  EXPECT_EQ(f.space()->label(2), "2");
}

TEST(Zoo, LogisticAndAffineStayOnTheGrid) {
  auto f = build_zoo("logistic:lambda=4,m=5");
  EXPECT_EQ(image_of(f), (std::vector<Point>{0, 3, 4, 3, 0}));
  auto g = build_zoo("affine:a=1/2,b=1/4,m=5");
  EXPECT_EQ(image_of(g), (std::vector<Point>{1, 1, 2, 2, 3}));
}

TEST(Zoo, ShiftOnPrimitiveWords) {
  auto f = build_zoo("shift:s=2,p=2");
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(f.space()->labels(), (std::vector<std::string>{"0", "1", "01", "10"}));
  EXPECT_EQ(image_of(f), (std::vector<Point>{0, 1, 3, 2}));
  // 0000... and 0101... first differ at index 1.
  EXPECT_EQ(f.space()->distance(0, 2), Rational(1, 2));
  EXPECT_EQ(f.space()->distance(0, 1), Rational(1));
}

TEST(Zoo, RandomIsReproducible) {
  EXPECT_EQ(build_zoo("random:n=7,seed=11"), build_zoo("random:seed=11,n=7"));
  EXPECT_NE(image_of(build_zoo("random:n=7,seed=11")), image_of(build_zoo("random:n=7,seed=12")));
}

TEST(Zoo, SpecRoundTrip) {
  auto spec = parse_zoo_spec("affine:a=1/2,b=1/4,m=7");
  EXPECT_EQ(spec.family, "affine");
  EXPECT_EQ(spec.params.at("b"), "1/4");
  EXPECT_EQ(build_zoo(parse_zoo_spec(spec.to_string())), build_zoo(spec));
}

TEST(Zoo, RangesExpandToCartesianProduct) {
  auto family = expand_zoo_family("rotation:m=3..5,k=1..2");
  ASSERT_EQ(family.size(), 6u);
  EXPECT_EQ(family.front().second, build_zoo(family.front().first));
  EXPECT_EQ(family.back().second, build_zoo("rotation:m=5,k=2"));
}

TEST(Zoo, ListsEveryFamily) {
  std::vector<std::string> names;
  for (const auto& info : list_zoo_families()) names.push_back(info.name);
  EXPECT_EQ(names, (std::vector<std::string>{"tent", "logistic", "affine", "rotation", "shift", "random"}));
}

TEST(Zoo, RejectsBadSpecs) {
  EXPECT_THROW(build_zoo("moebius:m=3"), ValidationError);
  EXPECT_THROW(build_zoo("tent:m=1"), ValidationError);
  EXPECT_THROW(build_zoo("tent:m=4,q=1"), ValidationError);
  EXPECT_THROW(build_zoo("tent"), ValidationError);
  EXPECT_THROW(build_zoo("rotation:m=4"), ValidationError);
  EXPECT_THROW(build_zoo("random:n=65,seed=1"), ValidationError);
  EXPECT_THROW(expand_zoo_family("tent:m=5..3"), ValidationError);
}

}  // namespace
}  // namespace shadowkit
