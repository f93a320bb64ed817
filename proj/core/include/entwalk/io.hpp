#pragma once

#include <complex>
#include <string>
#include <vector>

#include "entwalk/distribution.hpp"
#include "entwalk/metrics.hpp"

namespace entwalk {

// Plain-text complex encoding "re+imj", e.g. "0.5-0.25j". format_complex
// always writes both parts; parse_complex also accepts a bare real.
std::string format_complex(cplx z);
cplx parse_complex(const std::string& text);
std::vector<cplx> parse_complex_list(const std::string& text);

// Shortest representation that round-trips a double (17 significant digits).
std::string format_double(double v);

struct OutputOptions {
  bool timestamp = true;       // emit a "# generated ..." comment line
  bool log2_entropy = false;   // report entropies in bits instead of nats
  std::string command_line;    // echoed into the header for provenance
};

double entropy_scale(const OutputOptions& opts);
std::string entropy_unit(const OutputOptions& opts);

// CSV bodies. Each begins with comment lines ("# ..."): the deterministic
// header (command, entropy unit) and, unless suppressed, a timestamp.
std::string distribution_series_csv(const std::vector<ProbabilityDistribution>& per_step,
                                    const OutputOptions& opts);
std::string metrics_series_csv(const std::vector<MetricsReport>& series,
                               const OutputOptions& opts);

// JSON documents mirroring the CSV content, keyed by step. Numbers carry 17
// significant digits.
std::string run_json(const std::vector<ProbabilityDistribution>& per_step,
                     const std::vector<MetricsReport>& series, const OutputOptions& opts);
std::string sweep_json(const std::vector<int>& ns,
                       const std::vector<std::vector<MetricsReport>>& per_n,
                       const std::vector<MetricsReport>& classical_series,
                       const OutputOptions& opts);

void write_text_file(const std::string& path, const std::string& body);

}  // namespace entwalk
