#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "wavefg/eval.hpp"

using namespace wavefg;

namespace {

BinaryMask with_first(int w, int h, int n) {
  BinaryMask m(w, h);
  for (int i = 0; i < n; ++i) m.set(i % w, i / w, true);
  return m;
}

}  // namespace

TEST(Score, PerfectMask) {
  const BinaryMask t = with_first(10, 10, 7);
  const FrameReport r = score(t, t);
  EXPECT_EQ(r.metrics.recall, 1.0);
  EXPECT_EQ(r.metrics.precision, 1.0);
  EXPECT_EQ(r.metrics.f_measure, 1.0);
  EXPECT_TRUE(std::isinf(r.psnr));
}

TEST(Score, EmptyMask) {
  const FrameReport r = score(BinaryMask(100, 100), with_first(100, 100, 100));
  EXPECT_EQ(r.metrics.recall, 0.0);
  EXPECT_EQ(r.metrics.precision, 1.0);
  EXPECT_EQ(r.metrics.f_measure, 0.0);
  EXPECT_DOUBLE_EQ(r.psnr, 20.0);
}

TEST(Score, ComplementMask) {
  const BinaryMask t = with_first(8, 8, 20);
  BinaryMask c(8, 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) c.set(x, y, !t(x, y));
  }
  const FrameReport r = score(c, t);
  EXPECT_EQ(r.metrics.recall, 0.0);
  EXPECT_EQ(r.metrics.precision, 0.0);
  EXPECT_EQ(r.metrics.f_measure, 0.0);
  EXPECT_EQ(r.psnr, 0.0);
}

TEST(Score, SizeMismatchThrows) {
  EXPECT_THROW(score(BinaryMask(3, 3), BinaryMask(3, 4)), DimensionError);
}

TEST(Aggregate, MicroAverages) {
  FrameReport a, b;
  a.counts = {1, 0, 1, 10};
  b.counts = {3, 1, 0, 10};
  a.metrics = metrics_from_counts(a.counts);
  b.metrics = metrics_from_counts(b.counts);
  a.psnr = 10.0;
  b.psnr = 20.0;
  const FrameReport both[] = {a, b};
  const SequenceReport s = aggregate(both);
  EXPECT_DOUBLE_EQ(s.metrics.recall, 0.8);
  EXPECT_DOUBLE_EQ(s.metrics.precision, 0.8);
  EXPECT_DOUBLE_EQ(s.mean_psnr, 15.0);
  EXPECT_EQ(s.frames, 2u);

  const FrameReport single[] = {a};
  const SequenceReport one = aggregate(single);
  EXPECT_EQ(one.metrics.recall, a.metrics.recall);
  EXPECT_EQ(one.metrics.precision, a.metrics.precision);
  EXPECT_EQ(one.mean_psnr, a.psnr);
}

TEST(Aggregate, AllIdenticalFrames) {
  const BinaryMask t = with_first(5, 5, 3);
  const FrameReport r = score(t, t);
  const FrameReport three[] = {r, r, r};
  const SequenceReport s = aggregate(three);
  EXPECT_EQ(s.metrics.recall, 1.0);
  EXPECT_EQ(s.metrics.precision, 1.0);
  EXPECT_EQ(s.infinite_psnr_frames, 3u);
  EXPECT_THROW(aggregate(std::span<const FrameReport>{}), std::invalid_argument);
}

TEST(Metrics, FalsePositiveRate) {
  EXPECT_DOUBLE_EQ(false_positive_rate({0, 2, 0, 98}), 0.02);
  EXPECT_EQ(false_positive_rate({5, 0, 0, 0}), 0.0);
}

TEST(Table, PublishedRowLayout) {
  const std::string row = format_table_row("Proposed + MOG2", Metrics{0.984, 0.876, 0.926}, 42.904);
  EXPECT_EQ(row, "| Proposed + MOG2        |  0.984 |     0.876 |     0.926 |  42.904 |");
  EXPECT_EQ(format_table_header(), "| Method                 | Recall | Precision | F-Measure |    PSNR |");
  EXPECT_EQ(format_table_header().size(), row.size());
  const std::string inf = format_table_row("x", Metrics{1, 1, 1}, std::numeric_limits<double>::infinity());
  EXPECT_NE(inf.find("inf"), std::string::npos);
  EXPECT_EQ(inf.size(), row.size());
}

TEST(Csv, RowsAndAggregate) {
  const BinaryMask t = with_first(4, 4, 4);
  const FrameReport r[] = {score(t, t), score(BinaryMask(4, 4), t)};
  const long idx[] = {1, 2};
  std::ostringstream os;
  write_csv(os, idx, r, aggregate(r));
  const std::string csv = os.str();
  EXPECT_EQ(csv.rfind("frame,tp,fp,fn,tn,recall,precision,f,psnr\n", 0), 0u);
  EXPECT_NE(csv.find("\n1,4,0,0,12,"), std::string::npos);
  EXPECT_NE(csv.find("\naggregate,4,0,4,24,"), std::string::npos);
}
