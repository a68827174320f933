#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "wavefg/frame.hpp"

namespace wavefg {

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
  ConfusionCounts& operator+=(const ConfusionCounts& o) noexcept {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
};

/// Recall = 1 when nothing is to be found, precision = 1 when nothing was
/// reported, F = 0 when both are 0.
struct Metrics {
  double recall = 0.0;
  double precision = 0.0;
  double f_measure = 0.0;
};

Metrics metrics_from_counts(const ConfusionCounts& counts) noexcept;

struct FrameReport {
  ConfusionCounts counts;
  Metrics metrics;
  /// 10 log10(n / sum (mask - truth)^2) over {0,1} masks; +inf if identical.
  double psnr = 0.0;
};

FrameReport score(const BinaryMask& mask, const BinaryMask& truth);

/// Micro-averaged: metrics come from the summed counts. PSNR is the mean
/// over frames with finite PSNR; identical frames are counted separately.
struct SequenceReport {
  std::size_t frames = 0;
  ConfusionCounts counts;
  Metrics metrics;
  double mean_psnr = 0.0;
  std::size_t infinite_psnr_frames = 0;
};

SequenceReport aggregate(std::span<const FrameReport> reports);

/// Fraction of truly-background pixels reported as foreground.
double false_positive_rate(const ConfusionCounts& counts) noexcept;

/// Fixed-width table in the layout "Method | Recall | Precision |
/// F-Measure | PSNR", three decimals per value.
std::string format_table_header(int name_width = 22);
std::string format_table_row(std::string_view method, const Metrics& metrics, double psnr,
                             int name_width = 22);
std::string format_table_row(std::string_view method, const SequenceReport& report, int name_width = 22);

/// CSV with columns frame,tp,fp,fn,tn,recall,precision,f,psnr and a final
/// "aggregate" row (its psnr is the finite-frame mean).
void write_csv(std::ostream& out, std::span<const long> frame_indices, std::span<const FrameReport> reports,
               const SequenceReport& aggregate_report);

}  // namespace wavefg
