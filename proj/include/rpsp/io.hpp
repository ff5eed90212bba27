#pragma once

#include <string>

#include "rpsp/instance.hpp"
#include "rpsp/reductions.hpp"

namespace rpsp {

// Text formats. All are line-oriented; everything after '#' on a line is a
// comment and blank lines are ignored. Serialization emits the canonical
// form (single spaces, sorted sets/edges, trailing newline), and parsing a
// canonical file followed by serializing reproduces it byte for byte.
//
// Set-packing instance:
//   rpsp <n> <m> <p> <d> <k>
//   agents <a_0> ... <a_{n-1}>
//   set <e_1> ... <e_j>          (m lines, 1 <= j <= d)
//
// Kidney-exchange graph:
//   kep <n> <m_edges> <p> <d> <k>
//   agents <a_0> ... <a_{n-1}>
//   arc <u> <v>                  (m_edges lines)
//
// Packing:
//   packing <i_1> ... <i_t>      (sorted set indices, possibly none)
//
// Undirected graph (reduction input):
//   graph <n>
//   edge <u> <v>

Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

KepInput parse_kep(const std::string& text);
std::string serialize_kep(const KepInput& kep);

// Dispatches on the header keyword; kep inputs are translated eagerly.
struct LoadedInstance {
  Instance instance;
  std::optional<KepInput> kep;  // present when the file was a kep graph
};
LoadedInstance load_instance_text(const std::string& text);

Packing parse_packing(const std::string& text);
std::string serialize_packing(const Packing& x);

UndirectedGraph parse_graph(const std::string& text);
std::string serialize_graph(const UndirectedGraph& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace rpsp
