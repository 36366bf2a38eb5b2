#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plsa/geometry.hpp"

namespace plsa {

/// Named chains in file order; names unique, at least one chain.
struct ChainDocument {
  std::vector<Chain3D> chains;

  const Chain3D* find(std::string_view name) const;
};

/// ">name" starts a chain, each following line holds "x y z", '#' comments.
/// Coordinates before any header form one anonymous (empty-named) chain.
/// Throws LineError(ParseError) with the 1-based line number.
ChainDocument parse_chain_file(std::string_view text);

/// Inverse of parse_chain_file; 17 significant digits so doubles round-trip.
std::string format_chain_document(const ChainDocument& doc);

/// CA trace of the first model. Only ATOM records with atom name " CA ",
/// alternate location blank or 'A', and the requested chain id are kept.
/// Throws NoCaAtoms or LineError(MalformedRecord).
Chain3D parse_pdb_ca(std::string_view text, std::optional<char> chain_id = std::nullopt);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

/// 64-bit FNV-1a, hex encoded, for report input digests.
std::string fnv1a_digest(std::string_view bytes);

}  // namespace plsa
