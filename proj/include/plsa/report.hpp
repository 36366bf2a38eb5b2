#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "plsa/alignment.hpp"
#include "plsa/frechet.hpp"
#include "plsa/geometry.hpp"
#include "plsa/reduction.hpp"

namespace plsa {

enum class ReportFormat { Json, Text };

struct InputInfo {
  std::string path;
  std::string chain;
  std::size_t vertices = 0;
  std::string digest;
};

struct ReductionSummary {
  std::size_t n_vertices = 0;
  std::size_t n_edges = 0;
  std::optional<PropertyReport> properties;
  std::optional<IndependentSet> independent_set;
  std::optional<std::size_t> alignment_k;
  std::vector<std::size_t> alignment_vertices;

  bool equivalent() const {
    return independent_set && alignment_k && independent_set->k == *alignment_k;
  }
};

using ReportPayload = std::variant<FrechetResult, AlignmentResult, ReductionSummary, IndependentSet>;

struct RunReport {
  std::string command;
  std::vector<InputInfo> inputs;
  std::optional<double> delta;
  ReportPayload payload;
  /// Motion applied to the second chain (rigid search).
  std::optional<RigidMotion> motion;
  double elapsed_ms = 0.0;
  std::optional<std::uint64_t> seed;
  /// Chains the payload indexes into, as aligned (after any motion).
  std::vector<Chain3D> chains;
};

std::string_view payload_kind(const ReportPayload& p);

/// JSON object with keys kind, command, inputs, delta, value, subsequences,
/// walk, motion?, elapsed_ms, seed?, plus chains and kind-specific extras.
std::string emit_report(const RunReport& report, ReportFormat format);

/// Reads back a JSON report of kind "frechet" or "alignment".
/// Throws ParseError for malformed JSON or other kinds.
RunReport parse_report(std::string_view json_text);

/// Re-validates the payload against the embedded chains; empty when consistent.
std::vector<std::string> report_violations(const RunReport& report);

}  // namespace plsa
