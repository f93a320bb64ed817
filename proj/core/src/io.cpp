#include "entwalk/io.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace entwalk {

namespace {

std::string trimmed(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double_strict(const std::string& text, const char* what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(what) + ": cannot parse '" + text + "'");
  }
  if (pos != text.size()) {
    throw std::invalid_argument(std::string(what) + ": trailing characters in '" + text + "'");
  }
  return v;
}

// Index of the sign that splits real from imaginary part, or npos. Signs that
// open the string or follow an exponent marker belong to a single number.
std::size_t split_sign(const std::string& s) {
  for (std::size_t i = s.size(); i-- > 1;) {
    if (s[i] != '+' && s[i] != '-') continue;
    const char prev = s[i - 1];
    if (prev == 'e' || prev == 'E') continue;
    return i;
  }
  return std::string::npos;
}

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void append_header(std::string& out, const char* what, const OutputOptions& opts) {
  out += "# entwalk ";
  out += what;
  out += '\n';
  if (!opts.command_line.empty()) {
    out += "# command: " + opts.command_line + "\n";
  }
  out += "# entropy unit: " + entropy_unit(opts) + "\n";
  if (opts.timestamp) {
    out += "# generated: " + timestamp_utc() + "\n";
  }
}

std::string escape_json(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void append_json_preamble(std::string& out, const char* schema, const OutputOptions& opts) {
  out += "{\n  \"schema\": \"";
  out += schema;
  out += "\",\n";
  if (!opts.command_line.empty()) {
    out += "  \"command\": \"" + escape_json(opts.command_line) + "\",\n";
  }
  if (opts.timestamp) {
    out += "  \"generated\": \"" + timestamp_utc() + "\",\n";
  }
  out += "  \"entropy_unit\": \"" + entropy_unit(opts) + "\",\n";
}

void append_metrics_object(std::string& out, const MetricsReport& r, double scale,
                           const char* indent) {
  out += indent;
  out += "{\"step\": " + std::to_string(r.step);
  out += ", \"variance\": " + format_double(r.variance);
  out += ", \"std_dev\": " + format_double(r.std_dev);
  out += ", \"mean_x\": " + format_double(r.expected_position);
  out += ", \"support\": " + std::to_string(r.support_count);
  out += ", \"H_shannon_pos\": " + format_double(scale * r.shannon_entropy_position);
  out += ", \"S_vn_pos\": " + format_double(scale * r.von_neumann_entropy_position);
  out += ", \"H_coin\": " + format_double(scale * r.shannon_entropy_coin);
  out += ", \"sym_defect\": " + format_double(r.symmetry_defect);
  out += "}";
}

}  // namespace

std::string format_complex(cplx z) {
  std::string out = format_double(z.real());
  const std::string im = format_double(z.imag());
  if (im.empty() || im.front() != '-') out += '+';
  out += im;
  out += 'j';
  return out;
}

cplx parse_complex(const std::string& text) {
  const std::string s = trimmed(text);
  if (s.empty()) throw std::invalid_argument("parse_complex: empty input");
  if (s.back() != 'j' && s.back() != 'J') {
    return cplx(parse_double_strict(s, "parse_complex"), 0.0);
  }
  const std::string body = s.substr(0, s.size() - 1);
  if (body.empty()) throw std::invalid_argument("parse_complex: bare 'j' in '" + text + "'");
  const std::size_t cut = split_sign(body);
  if (cut == std::string::npos) {
    return cplx(0.0, parse_double_strict(body, "parse_complex"));
  }
  return cplx(parse_double_strict(body.substr(0, cut), "parse_complex"),
              parse_double_strict(body.substr(cut), "parse_complex"));
}

std::vector<cplx> parse_complex_list(const std::string& text) {
  std::vector<cplx> out;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, ',')) {
    out.push_back(parse_complex(item));
  }
  if (out.empty()) throw std::invalid_argument("parse_complex_list: empty input");
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double entropy_scale(const OutputOptions& opts) {
  return opts.log2_entropy ? 1.0 / std::log(2.0) : 1.0;
}

std::string entropy_unit(const OutputOptions& opts) {
  return opts.log2_entropy ? "bits" : "nats";
}

std::string distribution_series_csv(const std::vector<ProbabilityDistribution>& per_step,
                                    const OutputOptions& opts) {
  std::string out;
  append_header(out, "distribution series", opts);
  out += "step,position,probability\n";
  for (std::size_t t = 0; t < per_step.size(); ++t) {
    const ProbabilityDistribution& dist = per_step[t];
    for (Eigen::Index i = 0; i < dist.size(); ++i) {
      out += std::to_string(t);
      out += ',';
      out += std::to_string(dist.position_of(i));
      out += ',';
      out += format_double(dist.weights[i]);
      out += '\n';
    }
  }
  return out;
}

std::string metrics_series_csv(const std::vector<MetricsReport>& series,
                               const OutputOptions& opts) {
  const double scale = entropy_scale(opts);
  std::string out;
  append_header(out, "metrics series", opts);
  out += "step,variance,std_dev,mean_x,support,H_shannon_pos,S_vn_pos,H_coin,sym_defect\n";
  for (const MetricsReport& r : series) {
    out += std::to_string(r.step);
    out += ',' + format_double(r.variance);
    out += ',' + format_double(r.std_dev);
    out += ',' + format_double(r.expected_position);
    out += ',' + std::to_string(r.support_count);
    out += ',' + format_double(scale * r.shannon_entropy_position);
    out += ',' + format_double(scale * r.von_neumann_entropy_position);
    out += ',' + format_double(scale * r.shannon_entropy_coin);
    out += ',' + format_double(r.symmetry_defect);
    out += '\n';
  }
  return out;
}

std::string run_json(const std::vector<ProbabilityDistribution>& per_step,
                     const std::vector<MetricsReport>& series, const OutputOptions& opts) {
  if (per_step.size() != series.size()) {
    throw std::invalid_argument("run_json: distribution and metrics series differ in length");
  }
  const double scale = entropy_scale(opts);
  std::string out;
  append_json_preamble(out, "entwalk.run.v1", opts);
  out += "  \"steps\": {\n";
  for (std::size_t t = 0; t < per_step.size(); ++t) {
    const ProbabilityDistribution& dist = per_step[t];
    out += "    \"" + std::to_string(t) + "\": {\n      \"positions\": [";
    for (Eigen::Index i = 0; i < dist.size(); ++i) {
      if (i > 0) out += ", ";
      out += std::to_string(dist.position_of(i));
    }
    out += "],\n      \"probabilities\": [";
    for (Eigen::Index i = 0; i < dist.size(); ++i) {
      if (i > 0) out += ", ";
      out += format_double(dist.weights[i]);
    }
    out += "],\n      \"metrics\": ";
    append_metrics_object(out, series[t], scale, "");
    out += "\n    }";
    out += (t + 1 < per_step.size()) ? ",\n" : "\n";
  }
  out += "  }\n}\n";
  return out;
}

std::string sweep_json(const std::vector<int>& ns,
                       const std::vector<std::vector<MetricsReport>>& per_n,
                       const std::vector<MetricsReport>& classical_series,
                       const OutputOptions& opts) {
  if (ns.size() != per_n.size()) {
    throw std::invalid_argument("sweep_json: qubit list and metrics series differ in length");
  }
  const double scale = entropy_scale(opts);
  std::string out;
  append_json_preamble(out, "entwalk.sweep.v1", opts);
  out += "  \"walks\": {\n";
  for (std::size_t i = 0; i < ns.size(); ++i) {
    out += "    \"" + std::to_string(ns[i]) + "\": [\n";
    for (std::size_t t = 0; t < per_n[i].size(); ++t) {
      append_metrics_object(out, per_n[i][t], scale, "      ");
      out += (t + 1 < per_n[i].size()) ? ",\n" : "\n";
    }
    out += "    ]";
    out += (i + 1 < ns.size()) ? ",\n" : "\n";
  }
  out += "  },\n  \"classical\": [\n";
  for (std::size_t t = 0; t < classical_series.size(); ++t) {
    append_metrics_object(out, classical_series[t], scale, "    ");
    out += (t + 1 < classical_series.size()) ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open for writing: " + path);
  file << body;
  if (!file) throw std::runtime_error("write failed: " + path);
}

}  // namespace entwalk
