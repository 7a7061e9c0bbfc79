// Copyright 2026 The dpcp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// File formats.
//
// Proof (binary):
//   "DPCP" | version u8 = 1 | language u8 | dim u16 LE | parts u16 LE | body
// Each part is 2^dim bits packed 8 per byte, entry k at byte k/8, bit k%8.
// Parts start on byte boundaries.
//
// Graph (text):
//   n m
//   u v            m lines, 0 <= u < v < n
//   input i <s>    optional, rest of line is the input string
//
// Labeling (text):
//   label i <hex value> <bit length>

#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dpcp/errors.hpp"
#include "dpcp/gf2.hpp"
#include "dpcp/graph.hpp"
#include "dpcp/lcp.hpp"

namespace dpcp {

inline constexpr char kProofMagic[4] = {'D', 'P', 'C', 'P'};
inline constexpr std::uint8_t kProofVersion = 1;

struct ProofFile {
  LanguageId language;
  MultiProof proof;
};

inline void write_proof(std::ostream& out, const MultiProof& proof, LanguageId lang) {
  const auto dim = static_cast<std::uint16_t>(proof.dim());
  const auto parts = static_cast<std::uint16_t>(proof.part_count());
  out.write(kProofMagic, 4);
  const unsigned char head[6] = {kProofVersion,
                                 static_cast<unsigned char>(lang),
                                 static_cast<unsigned char>(dim & 0xFF),
                                 static_cast<unsigned char>(dim >> 8),
                                 static_cast<unsigned char>(parts & 0xFF),
                                 static_cast<unsigned char>(parts >> 8)};
  out.write(reinterpret_cast<const char*>(head), 6);
  for (std::size_t p = 0; p < proof.part_count(); ++p) {
    const auto& bits = proof.part(p).bits();
    std::vector<char> packed((bits.size() + 7) / 8, 0);
    for (std::size_t k = 0; k < bits.size(); ++k) {
      if (bits[k]) packed[k / 8] = static_cast<char>(packed[k / 8] | (1 << (k % 8)));
    }
    out.write(packed.data(), static_cast<std::streamsize>(packed.size()));
  }
}

inline ProofFile read_proof(std::istream& in) {
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (data.size() < 10 || data.compare(0, 4, kProofMagic, 4) != 0) {
    throw FormatError("malformed proof: bad header");
  }
  auto byte = [&](std::size_t i) { return static_cast<unsigned char>(data[i]); };
  if (byte(4) != kProofVersion) throw FormatError("malformed proof: unsupported version");
  const unsigned lang = byte(5);
  if (lang < 1 || lang > 3) throw FormatError("malformed proof: unknown language id");
  const std::size_t dim = byte(6) | (std::size_t{byte(7)} << 8);
  const std::size_t parts = byte(8) | (std::size_t{byte(9)} << 8);
  if (dim == 0 || dim > kDefaultMaxDim || parts == 0) {
    throw FormatError("malformed proof: bad dimensions");
  }
  const std::size_t entries = std::size_t{1} << dim;
  const std::size_t part_bytes = (entries + 7) / 8;
  if (data.size() != 10 + parts * part_bytes) throw FormatError("malformed proof: wrong length");
  std::vector<ProofTable> tables;
  for (std::size_t p = 0; p < parts; ++p) {
    std::vector<std::uint8_t> bits(entries);
    const std::size_t base = 10 + p * part_bytes;
    for (std::size_t k = 0; k < entries; ++k) bits[k] = (byte(base + k / 8) >> (k % 8)) & 1;
    tables.emplace_back(dim, std::move(bits));
  }
  return {static_cast<LanguageId>(lang), MultiProof(std::move(tables))};
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
T parse_number(std::string_view s, std::size_t line, int base = 10) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError("line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace detail

inline Instance read_graph(std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  auto next = [&](std::string_view& s) {
    while (std::getline(in, raw)) {
      ++line;
      s = detail::trim(raw);
      if (!s.empty() && s.front() != '#') return true;
    }
    return false;
  };
  std::string_view s;
  if (!next(s)) throw FormatError("empty graph file");
  auto head = detail::words(s);
  if (head.size() != 2) throw FormatError("line " + std::to_string(line) + ": expected 'n m'");
  const auto n = detail::parse_number<std::size_t>(head[0], line);
  const auto m = detail::parse_number<std::size_t>(head[1], line);
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < m; ++e) {
    if (!next(s)) throw FormatError("graph file ends before all edges");
    auto w = detail::words(s);
    if (w.size() != 2) throw FormatError("line " + std::to_string(line) + ": expected 'u v'");
    const auto u = detail::parse_number<Vertex>(w[0], line);
    const auto v = detail::parse_number<Vertex>(w[1], line);
    if (!(u < v && v < n)) {
      throw FormatError("line " + std::to_string(line) + ": edge must satisfy u < v < n");
    }
    edges.emplace_back(u, v);
  }
  Instance inst(Graph(n, edges));
  std::vector<bool> seen(n, false);
  while (next(s)) {
    if (s.substr(0, 6) != "input " && s.substr(0, 6) != "input\t") {
      throw FormatError("line " + std::to_string(line) + ": unexpected content");
    }
    std::string_view rest = detail::trim(s.substr(6));
    const auto sp = rest.find_first_of(" \t");
    const auto i = detail::parse_number<Vertex>(rest.substr(0, sp), line);
    if (i >= n) throw FormatError("line " + std::to_string(line) + ": vertex out of range");
    if (seen[i]) throw FormatError("line " + std::to_string(line) + ": duplicate input");
    seen[i] = true;
    inst.inputs[i] = sp == std::string_view::npos ? "" : std::string(detail::trim(rest.substr(sp)));
  }
  return inst;
}

inline void write_graph(std::ostream& out, const Instance& inst) {
  out << inst.size() << ' ' << inst.graph.edge_count() << '\n';
  for (auto [u, v] : inst.graph.edges()) out << u << ' ' << v << '\n';
  for (Vertex i = 0; i < inst.size(); ++i) {
    if (!inst.inputs[i].empty()) out << "input " << i << ' ' << inst.inputs[i] << '\n';
  }
}

inline Labeling read_labeling(std::istream& in, std::size_t n) {
  Labeling out;
  out.labels.resize(n);
  std::vector<bool> seen(n, false);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = detail::trim(raw);
    if (s.empty() || s.front() == '#') continue;
    const auto w = detail::words(s);
    if (w.size() != 4 || w[0] != "label") {
      throw FormatError("line " + std::to_string(line) + ": expected 'label i <hex> <bits>'");
    }
    const auto i = detail::parse_number<Vertex>(w[1], line);
    const auto value = detail::parse_number<std::uint64_t>(w[2], line, 16);
    const auto bits = detail::parse_number<unsigned>(w[3], line);
    if (i >= n || seen[i]) throw FormatError("line " + std::to_string(line) + ": bad vertex");
    if (bits > 64 || (bits < 64 && value >> bits != 0)) {
      throw FormatError("line " + std::to_string(line) + ": value exceeds bit length");
    }
    seen[i] = true;
    out.labels[i] = {value, bits};
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw FormatError("labeling does not cover every vertex");
  }
  return out;
}

inline void write_labeling(std::ostream& out, const Labeling& labeling) {
  for (std::size_t i = 0; i < labeling.size(); ++i) {
    const auto& l = labeling.labels[i];
    out << "label " << i << ' ' << std::hex << l.value << std::dec << ' ' << l.bits << '\n';
  }
}

/// Writes `content` to a sibling temp file, then renames it over `path`.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace dpcp
