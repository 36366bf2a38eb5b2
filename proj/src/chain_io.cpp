#include "plsa/chain_io.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "plsa/error.hpp"
#include "text_util.hpp"

namespace plsa {

const Chain3D* ChainDocument::find(std::string_view name) const {
  for (const auto& c : chains) {
    if (c.id() == name) return &c;
  }
  return nullptr;
}

ChainDocument parse_chain_file(std::string_view text) {
  ChainDocument doc;
  std::set<std::string> names;

  std::string name;
  std::vector<Point3> pts;
  std::size_t header_line = 0;
  bool open = false;

  auto close = [&] {
    if (!open) return;
    if (pts.empty()) throw LineError(ErrorCode::ParseError, header_line, "empty chain '" + name + "'");
    if (!names.insert(name).second) {
      throw LineError(ErrorCode::ParseError, header_line, "duplicate chain name '" + name + "'");
    }
    doc.chains.emplace_back(name, std::move(pts));
    pts.clear();
    open = false;
  };

  std::size_t line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    const std::string_view line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '>') {
      close();
      name = std::string(detail::trim(line.substr(1)));
      if (name.empty()) throw LineError(ErrorCode::ParseError, line_no, "missing chain name after '>'");
      header_line = line_no;
      open = true;
      continue;
    }
    if (!open) {
      name.clear();
      header_line = line_no;
      open = true;
    }
    const auto fields = detail::split_fields(line);
    if (fields.size() != 3) {
      throw LineError(ErrorCode::ParseError, line_no,
                      "wrong field count: expected 3 reals, got " + std::to_string(fields.size()));
    }
    std::array<double, 3> xyz{};
    for (std::size_t k = 0; k < 3; ++k) {
      if (!detail::parse_real(fields[k], xyz[k])) {
        throw LineError(ErrorCode::ParseError, line_no,
                        "unparseable number '" + std::string(fields[k]) + "'");
      }
    }
    pts.push_back({xyz[0], xyz[1], xyz[2]});
  }
  close();
  if (doc.chains.empty()) throw LineError(ErrorCode::ParseError, line_no, "no chains in file");
  return doc;
}

namespace {

void append_real(std::string& out, double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                       std::chars_format::general, 17);
  out.append(buf.data(), ptr);
}

}  // namespace

std::string format_chain_document(const ChainDocument& doc) {
  std::string out;
  for (const auto& c : doc.chains) {
    if (!c.id().empty() || doc.chains.size() > 1) out += ">" + c.id() + "\n";
    for (const auto& v : c.vertices()) {
      append_real(out, v.x);
      out += ' ';
      append_real(out, v.y);
      out += ' ';
      append_real(out, v.z);
      out += '\n';
    }
  }
  return out;
}

Chain3D parse_pdb_ca(std::string_view text, std::optional<char> chain_id) {
  std::vector<Point3> pts;
  bool in_model = false;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    const std::string_view record = line.substr(0, std::min<std::size_t>(6, line.size()));
    if (record.starts_with("MODEL")) {
      if (in_model) break;  // second MODEL without ENDMDL
      in_model = true;
      continue;
    }
    if (record.starts_with("ENDMDL")) {
      if (in_model) break;
      continue;
    }
    if (record != "ATOM  " && record != "ATOM") continue;
    if (line.size() < 54) {
      throw LineError(ErrorCode::MalformedRecord, line_no,
                      "ATOM record shorter than 54 columns");
    }
    if (line.substr(12, 4) != " CA ") continue;
    const char alt = line[16];
    if (alt != ' ' && alt != 'A') continue;
    if (chain_id && line[21] != *chain_id) continue;
    std::array<double, 3> xyz{};
    for (std::size_t k = 0; k < 3; ++k) {
      const std::string_view field = detail::trim(line.substr(30 + 8 * k, 8));
      if (!detail::parse_real(field, xyz[k])) {
        throw LineError(ErrorCode::MalformedRecord, line_no,
                        "bad coordinate '" + std::string(field) + "'");
      }
    }
    pts.push_back({xyz[0], xyz[1], xyz[2]});
  }
  if (pts.empty()) {
    throw Error(ErrorCode::NoCaAtoms, chain_id ? std::string("no CA atoms in chain ") + *chain_id
                                               : std::string("no CA atoms"));
  }
  return Chain3D(chain_id ? std::string("pdb:") + *chain_id : std::string("pdb"), std::move(pts));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

std::string fnv1a_digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::array<char, 17> hex{};
  const auto [ptr, ec] = std::to_chars(hex.data(), hex.data() + 16, h, 16);
  std::string s(hex.data(), ptr);
  return "fnv1a64:" + std::string(16 - s.size(), '0') + s;
}

}  // namespace plsa
