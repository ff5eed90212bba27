#include "rpsp/io.hpp"

#include <fstream>
#include <sstream>

namespace rpsp {

namespace {

// Tokenized non-comment lines, with original line numbers for messages.
struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

long long to_int(const Line& line, size_t idx) {
  const std::string& tok = line.tokens[idx];
  try {
    size_t pos = 0;
    long long v = std::stoll(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    fail(line.number, "expected an integer, got '" + tok + "'");
  }
}

void expect_tokens(const Line& line, size_t count) {
  if (line.tokens.size() != count)
    fail(line.number, "expected " + std::to_string(count) + " fields, got " +
                          std::to_string(line.tokens.size()));
}

std::vector<int> parse_agents_line(const Line& line, int n) {
  if (line.tokens.empty() || line.tokens[0] != "agents")
    fail(line.number, "expected an 'agents' line");
  if (static_cast<int>(line.tokens.size()) != n + 1)
    fail(line.number, "expected " + std::to_string(n) + " agent entries, got " +
                          std::to_string(line.tokens.size() - 1));
  std::vector<int> agents(n);
  for (int i = 0; i < n; ++i)
    agents[i] = static_cast<int>(to_int(line, i + 1));
  return agents;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty instance file");
  const Line& header = lines[0];
  if (header.tokens[0] != "rpsp")
    fail(header.number, "expected an 'rpsp' header");
  expect_tokens(header, 6);
  int n = static_cast<int>(to_int(header, 1));
  int m = static_cast<int>(to_int(header, 2));
  int p = static_cast<int>(to_int(header, 3));
  int d = static_cast<int>(to_int(header, 4));
  int k = static_cast<int>(to_int(header, 5));
  if (lines.size() < 2) throw ParseError("missing 'agents' line");
  auto agents = parse_agents_line(lines[1], n);
  if (static_cast<int>(lines.size()) != 2 + m)
    throw ParseError("header promises " + std::to_string(m) +
                     " set lines, file has " + std::to_string(lines.size() - 2));
  std::vector<std::vector<int>> sets;
  sets.reserve(m);
  for (int i = 0; i < m; ++i) {
    const Line& line = lines[2 + i];
    if (line.tokens[0] != "set") fail(line.number, "expected a 'set' line");
    if (line.tokens.size() < 2) fail(line.number, "empty set");
    std::vector<int> s;
    for (size_t j = 1; j < line.tokens.size(); ++j)
      s.push_back(static_cast<int>(to_int(line, j)));
    sets.push_back(std::move(s));
  }
  try {
    return make_instance(n, p, std::move(agents), std::move(sets), d, k);
  } catch (const InvalidParameterError& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << "rpsp " << inst.n << ' ' << inst.num_sets() << ' ' << inst.p << ' '
      << inst.d << ' ' << inst.k << '\n';
  out << "agents";
  for (int a : inst.agent_of) out << ' ' << a;
  out << '\n';
  for (const auto& s : inst.sets) {
    out << "set";
    for (int e : s) out << ' ' << e;
    out << '\n';
  }
  return out.str();
}

KepInput parse_kep(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty kep file");
  const Line& header = lines[0];
  if (header.tokens[0] != "kep") fail(header.number, "expected a 'kep' header");
  expect_tokens(header, 6);
  int n = static_cast<int>(to_int(header, 1));
  int m = static_cast<int>(to_int(header, 2));
  int p = static_cast<int>(to_int(header, 3));
  int d = static_cast<int>(to_int(header, 4));
  int k = static_cast<int>(to_int(header, 5));
  if (n > kMaxElements)
    throw ParseError("kep graph has " + std::to_string(n) +
                     " vertices, limit is " + std::to_string(kMaxElements));
  if (lines.size() < 2) throw ParseError("missing 'agents' line");
  auto agents = parse_agents_line(lines[1], n);
  if (static_cast<int>(lines.size()) != 2 + m)
    throw ParseError("header promises " + std::to_string(m) +
                     " arc lines, file has " + std::to_string(lines.size() - 2));
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (int i = 0; i < m; ++i) {
    const Line& line = lines[2 + i];
    if (line.tokens[0] != "arc") fail(line.number, "expected an 'arc' line");
    expect_tokens(line, 3);
    edges.emplace_back(static_cast<int>(to_int(line, 1)),
                       static_cast<int>(to_int(line, 2)));
  }
  KepInput kep;
  try {
    kep.g = make_digraph(n, std::move(edges));
  } catch (const InvalidParameterError& e) {
    throw ParseError(e.what());
  }
  kep.agent_of = std::move(agents);
  kep.p = p;
  kep.d = d;
  kep.k = k;
  if (p < 1) throw ParseError("agent count must be at least 1");
  for (int a : kep.agent_of)
    if (a < 0 || a >= p)
      throw ParseError("agent " + std::to_string(a) + " outside [0, " +
                       std::to_string(p) + ")");
  if (d < 1) throw ParseError("d must be at least 1");
  if (k < 0) throw ParseError("k is negative");
  return kep;
}

std::string serialize_kep(const KepInput& kep) {
  std::ostringstream out;
  out << "kep " << kep.g.n << ' ' << kep.g.edges.size() << ' ' << kep.p << ' '
      << kep.d << ' ' << kep.k << '\n';
  out << "agents";
  for (int a : kep.agent_of) out << ' ' << a;
  out << '\n';
  for (auto [u, v] : kep.g.edges) out << "arc " << u << ' ' << v << '\n';
  return out.str();
}

LoadedInstance load_instance_text(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty input");
  const std::string& kind = lines[0].tokens[0];
  if (kind == "rpsp") return {parse_instance(text), std::nullopt};
  if (kind == "kep") {
    KepInput kep = parse_kep(text);
    return {kep_to_set_packing(kep.g, kep.agent_of, kep.p, kep.d, kep.k), kep};
  }
  fail(lines[0].number, "unknown header '" + kind + "'");
}

Packing parse_packing(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.size() != 1 || lines[0].tokens[0] != "packing")
    throw ParseError("expected a single 'packing' line");
  Packing x;
  for (size_t j = 1; j < lines[0].tokens.size(); ++j)
    x.push_back(static_cast<int>(to_int(lines[0], j)));
  return x;
}

std::string serialize_packing(const Packing& x) {
  std::ostringstream out;
  out << "packing";
  for (int i : x) out << ' ' << i;
  out << '\n';
  return out.str();
}

UndirectedGraph parse_graph(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty graph file");
  const Line& header = lines[0];
  if (header.tokens[0] != "graph")
    fail(header.number, "expected a 'graph' header");
  expect_tokens(header, 2);
  int n = static_cast<int>(to_int(header, 1));
  std::vector<std::pair<int, int>> edges;
  for (size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.tokens[0] != "edge") fail(line.number, "expected an 'edge' line");
    expect_tokens(line, 3);
    edges.emplace_back(static_cast<int>(to_int(line, 1)),
                       static_cast<int>(to_int(line, 2)));
  }
  try {
    return make_undirected_graph(n, std::move(edges));
  } catch (const InvalidParameterError& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_graph(const UndirectedGraph& g) {
  std::ostringstream out;
  out << "graph " << g.n << '\n';
  for (auto [u, v] : g.edges) out << "edge " << u << ' ' << v << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

}  // namespace rpsp
