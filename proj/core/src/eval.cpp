#include "wavefg/eval.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace wavefg {

Metrics metrics_from_counts(const ConfusionCounts& c) noexcept {
  Metrics m;
  m.recall = (c.tp + c.fn) == 0 ? 1.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  m.precision = (c.tp + c.fp) == 0 ? 1.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  const double sum = m.recall + m.precision;
  m.f_measure = sum > 0.0 ? 2.0 * m.recall * m.precision / sum : 0.0;
  return m;
}

FrameReport score(const BinaryMask& mask, const BinaryMask& truth) {
  require_same_shape(mask.plane(), truth.plane(), "score");
  FrameReport r;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    const bool m = mask[i];
    const bool t = truth[i];
    if (m && t) {
      ++r.counts.tp;
    } else if (m) {
      ++r.counts.fp;
    } else if (t) {
      ++r.counts.fn;
    } else {
      ++r.counts.tn;
    }
  }
  r.metrics = metrics_from_counts(r.counts);
  const auto errors = r.counts.fp + r.counts.fn;
  r.psnr = errors == 0 ? std::numeric_limits<double>::infinity()
                       : 10.0 * std::log10(static_cast<double>(r.counts.total()) / static_cast<double>(errors));
  return r;
}

SequenceReport aggregate(std::span<const FrameReport> reports) {
  if (reports.empty()) throw std::invalid_argument("aggregate: no frame reports");
  SequenceReport out;
  out.frames = reports.size();
  double psnr_sum = 0.0;
  std::size_t finite = 0;
  for (const auto& r : reports) {
    out.counts += r.counts;
    if (std::isinf(r.psnr)) {
      ++out.infinite_psnr_frames;
    } else {
      psnr_sum += r.psnr;
      ++finite;
    }
  }
  out.metrics = metrics_from_counts(out.counts);
  out.mean_psnr = finite ? psnr_sum / static_cast<double>(finite) : std::numeric_limits<double>::infinity();
  return out;
}

double false_positive_rate(const ConfusionCounts& c) noexcept {
  const auto negatives = c.fp + c.tn;
  return negatives == 0 ? 0.0 : static_cast<double>(c.fp) / static_cast<double>(negatives);
}

std::string format_table_header(int name_width) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "| %-*s | %6s | %9s | %9s | %7s |", name_width, "Method", "Recall", "Precision",
                "F-Measure", "PSNR");
  return buf;
}

std::string format_table_row(std::string_view method, const Metrics& m, double psnr, int name_width) {
  char psnr_text[32];
  if (std::isinf(psnr)) {
    std::snprintf(psnr_text, sizeof psnr_text, "%7s", "inf");
  } else {
    std::snprintf(psnr_text, sizeof psnr_text, "%7.3f", psnr);
  }
  char buf[256];
  std::snprintf(buf, sizeof buf, "| %-*.*s | %6.3f | %9.3f | %9.3f | %s |", name_width, name_width, std::string(method).c_str(),
                m.recall, m.precision, m.f_measure, psnr_text);
  return buf;
}

std::string format_table_row(std::string_view method, const SequenceReport& report, int name_width) {
  return format_table_row(method, report.metrics, report.mean_psnr, name_width);
}

void write_csv(std::ostream& out, std::span<const long> frame_indices, std::span<const FrameReport> reports,
               const SequenceReport& agg) {
  if (frame_indices.size() != reports.size()) throw std::invalid_argument("write_csv: index/report count mismatch");
  auto row = [&out](const std::string& label, const ConfusionCounts& c, const Metrics& m, double psnr) {
    char buf[256];
    std::snprintf(buf, sizeof buf, ",%llu,%llu,%llu,%llu,%.6f,%.6f,%.6f,", static_cast<unsigned long long>(c.tp),
                  static_cast<unsigned long long>(c.fp), static_cast<unsigned long long>(c.fn),
                  static_cast<unsigned long long>(c.tn), m.recall, m.precision, m.f_measure);
    out << label << buf;
    if (std::isinf(psnr)) {
      out << "inf";
    } else {
      char p[32];
      std::snprintf(p, sizeof p, "%.6f", psnr);
      out << p;
    }
    out << '\n';
  };
  out << "frame,tp,fp,fn,tn,recall,precision,f,psnr\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    row(std::to_string(frame_indices[i]), reports[i].counts, reports[i].metrics, reports[i].psnr);
  }
  row("aggregate", agg.counts, agg.metrics, agg.mean_psnr);
}

}  // namespace wavefg
