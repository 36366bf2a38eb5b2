#include "plsa/report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "plsa/error.hpp"

namespace plsa {

using nlohmann::json;

namespace {

json points_json(std::span<const Point3> pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back({p.x, p.y, p.z});
  return arr;
}

std::vector<Point3> points_from(const json& arr) {
  std::vector<Point3> pts;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 3) throw Error(ErrorCode::ParseError, "point must be [x, y, z]");
    pts.push_back(checked_point(p[0].get<double>(), p[1].get<double>(), p[2].get<double>()));
  }
  return pts;
}

json motion_json(const RigidMotion& m) {
  json rot = json::array();
  for (int r = 0; r < 3; ++r) rot.push_back({m.rotation()(r, 0), m.rotation()(r, 1), m.rotation()(r, 2)});
  const auto& t = m.translation();
  return {{"rotation", rot}, {"translation", {t.x(), t.y(), t.z()}}};
}

RigidMotion motion_from(const json& j) {
  Eigen::Matrix3d r;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) r(a, b) = j.at("rotation").at(a).at(b).get<double>();
  }
  const auto& t = j.at("translation");
  return RigidMotion(r, {t.at(0).get<double>(), t.at(1).get<double>(), t.at(2).get<double>()});
}

json properties_json(const PropertyReport& report) {
  json arr = json::array();
  for (const auto& c : report.checks) {
    arr.push_back({{"name", c.name},
                   {"holds", c.holds},
                   {"measured", c.measured},
                   {"threshold", c.threshold},
                   {"witness", c.witness}});
  }
  return arr;
}

struct PayloadJson {
  json& out;

  void operator()(const FrechetResult& r) const {
    out["value"] = r.value;
    out["subsequences"] = json::array();
    json walk = json::array();
    for (const auto& s : r.walk.steps) walk.push_back({s.i, s.j});
    out["walk"] = walk;
    out["witness"] = {r.witness.i, r.witness.j};
  }

  void operator()(const AlignmentResult& r) const {
    out["value"] = r.value;
    out["subsequences"] = r.subsequences;
    out["walk"] = r.walk.steps;
    out["common_chain"] = r.common_chain ? points_json(r.common_chain->vertices()) : json(nullptr);
  }

  void operator()(const ReductionSummary& r) const {
    out["value"] = r.alignment_k ? json(*r.alignment_k) : json(nullptr);
    out["subsequences"] = json::array();
    out["walk"] = json::array();
    out["graph"] = {{"n_vertices", r.n_vertices}, {"n_edges", r.n_edges}};
    if (r.properties) {
      out["properties"] = properties_json(*r.properties);
      out["properties_hold"] = r.properties->all_hold();
    }
    if (r.independent_set) {
      out["independent_set"] = {{"k", r.independent_set->k}, {"witness", r.independent_set->witness}};
    }
    if (r.alignment_k) {
      out["alignment"] = {{"k", *r.alignment_k}, {"vertices", r.alignment_vertices}};
      out["equivalent"] = r.equivalent();
    }
  }

  void operator()(const IndependentSet& r) const {
    out["value"] = r.k;
    out["subsequences"] = json::array();
    out["walk"] = json::array();
    out["witness"] = r.witness;
  }
};

std::string format_real(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? " " : "") + std::to_string(xs[k]);
  return out;
}

struct PayloadText {
  std::ostringstream& out;

  void operator()(const FrechetResult& r) const {
    out << "discrete frechet distance: " << format_real(r.value) << "\n";
    out << "witness pair: (" << r.witness.i << ", " << r.witness.j << ")\n";
    out << "walk length: " << r.walk.steps.size() << "\n";
  }

  void operator()(const AlignmentResult& r) const {
    out << "alignment value: " << r.value << "\n";
    for (std::size_t c = 0; c < r.subsequences.size(); ++c) {
      out << "  chain " << c + 1 << ": " << r.subsequences[c].size() << " aligned ["
          << join(r.subsequences[c]) << "]\n";
    }
    out << "common chain vertices: " << (r.common_chain ? r.common_chain->size() : 0) << "\n";
  }

  void operator()(const ReductionSummary& r) const {
    out << "graph: N = " << r.n_vertices << ", M = " << r.n_edges << "\n";
    if (r.properties) {
      for (const auto& c : r.properties->checks) {
        out << "  property " << c.name << ": " << (c.holds ? "holds" : "VIOLATED")
            << " (measured " << format_real(c.measured) << ", threshold " << format_real(c.threshold) << ")";
        if (!c.witness.empty()) out << " at " << c.witness;
        out << "\n";
      }
    } else {
      out << "  properties: skipped\n";
    }
    if (r.independent_set && r.alignment_k) {
      out << "  maximum independent set: " << r.independent_set->k << " [" << join(r.independent_set->witness)
          << "]\n";
      out << "  maximum alignment chain: " << *r.alignment_k << " [" << join(r.alignment_vertices) << "]\n";
      out << "  equivalence: " << (r.equivalent() ? "holds" : "VIOLATED") << "\n";
    } else {
      out << "  equivalence: skipped\n";
    }
  }

  void operator()(const IndependentSet& r) const {
    out << "maximum independent set size: " << r.k << "\n";
    out << "witness: {" << join(r.witness) << "}\n";
  }
};

}  // namespace

std::string_view payload_kind(const ReportPayload& p) {
  constexpr std::string_view kinds[] = {"frechet", "alignment", "reduction", "independent_set"};
  return kinds[p.index()];
}

std::string emit_report(const RunReport& report, ReportFormat format) {
  if (format == ReportFormat::Text) {
    std::ostringstream out;
    out << "command: " << report.command << "\n";
    for (const auto& in : report.inputs) {
      out << "input: " << in.path;
      if (!in.chain.empty()) out << " (" << in.chain << ")";
      if (in.vertices) out << ", " << in.vertices << " vertices";
      out << ", " << in.digest << "\n";
    }
    if (report.delta) out << "delta: " << format_real(*report.delta) << "\n";
    if (report.seed) out << "seed: " << *report.seed << "\n";
    std::visit(PayloadText{out}, report.payload);
    if (report.motion) {
      const auto& t = report.motion->translation();
      out << "motion translation: (" << format_real(t.x()) << ", " << format_real(t.y()) << ", "
          << format_real(t.z()) << ")\n";
    }
    out << "elapsed: " << format_real(report.elapsed_ms) << " ms\n";
    return out.str();
  }

  json out;
  out["kind"] = payload_kind(report.payload);
  out["command"] = report.command;
  json inputs = json::array();
  for (const auto& in : report.inputs) {
    inputs.push_back({{"path", in.path}, {"chain", in.chain}, {"vertices", in.vertices}, {"digest", in.digest}});
  }
  out["inputs"] = inputs;
  out["delta"] = report.delta ? json(*report.delta) : json(nullptr);
  std::visit(PayloadJson{out}, report.payload);
  if (report.motion) out["motion"] = motion_json(*report.motion);
  out["elapsed_ms"] = report.elapsed_ms;
  if (report.seed) out["seed"] = *report.seed;
  json chains = json::array();
  for (const auto& c : report.chains) chains.push_back({{"name", c.id()}, {"vertices", points_json(c.vertices())}});
  out["chains"] = chains;
  return out.dump(2) + "\n";
}

RunReport parse_report(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("report is not valid JSON: ") + e.what());
  }
  try {
    RunReport report;
    report.command = j.at("command").get<std::string>();
    for (const auto& in : j.at("inputs")) {
      report.inputs.push_back({in.at("path").get<std::string>(), in.at("chain").get<std::string>(),
                               in.at("vertices").get<std::size_t>(), in.at("digest").get<std::string>()});
    }
    if (!j.at("delta").is_null()) report.delta = j.at("delta").get<double>();
    if (j.contains("motion")) report.motion = motion_from(j.at("motion"));
    report.elapsed_ms = j.at("elapsed_ms").get<double>();
    if (j.contains("seed")) report.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& c : j.at("chains")) {
      report.chains.emplace_back(c.at("name").get<std::string>(), points_from(c.at("vertices")));
    }

    const auto kind = j.at("kind").get<std::string>();
    if (kind == "frechet") {
      FrechetResult r;
      r.value = j.at("value").get<double>();
      for (const auto& s : j.at("walk")) r.walk.steps.push_back({s.at(0).get<std::size_t>(), s.at(1).get<std::size_t>()});
      r.witness = {j.at("witness").at(0).get<std::size_t>(), j.at("witness").at(1).get<std::size_t>()};
      report.payload = r;
    } else if (kind == "alignment") {
      AlignmentResult r;
      r.value = j.at("value").get<std::size_t>();
      r.subsequences = j.at("subsequences").get<std::vector<std::vector<std::size_t>>>();
      r.walk.steps = j.at("walk").get<std::vector<IndexTuple>>();
      if (!j.at("common_chain").is_null()) r.common_chain = Chain3D("common", points_from(j.at("common_chain")));
      report.payload = std::move(r);
    } else {
      throw Error(ErrorCode::ParseError, "reports of kind '" + kind + "' cannot be read back");
    }
    return report;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed report: ") + e.what());
  } catch (const Error& e) {
    if (e.category() == ErrorCategory::Input) throw;
    throw Error(ErrorCode::ParseError, std::string("malformed report: ") + e.what());
  }
}

std::vector<std::string> report_violations(const RunReport& report) {
  if (const auto* r = std::get_if<AlignmentResult>(&report.payload)) {
    if (!report.delta) return {"alignment report without delta"};
    return alignment_violations(*r, report.chains, *report.delta);
  }
  if (const auto* r = std::get_if<FrechetResult>(&report.payload)) {
    if (report.chains.size() != 2) return {"frechet report needs two chains"};
    const auto& a = report.chains[0];
    const auto& b = report.chains[1];
    std::vector<std::string> problems;
    if (!r->walk.is_valid_for(a.size(), b.size())) {
      problems.push_back("walk is not a coupling");
      return problems;
    }
    if (walk_cost(a, b, r->walk) != r->value) problems.push_back("value differs from the walk cost");
    if (r->witness.i < 1 || r->witness.i > a.size() || r->witness.j < 1 || r->witness.j > b.size() ||
        dist(a[r->witness.i - 1], b[r->witness.j - 1]) != r->value) {
      problems.push_back("witness does not attain the value");
    }
    if (discrete_frechet_value(a, b) != r->value) problems.push_back("value is not the discrete Frechet distance");
    return problems;
  }
  return {};
}

}  // namespace plsa
