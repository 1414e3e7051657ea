#pragma once

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "engine.hpp"
#include "minor.hpp"

namespace mixedfree {

using Json = nlohmann::ordered_json;

// 64-bit FNV-1a, hex encoded.
inline std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

// Boundaries are the last row (column) of every block but the final one and
// corners are [i, j, r, c]; everything 1-based.
inline Json witness_to_json(const MinorWitness& w) {
  Json j;
  j["kind"] = to_string(w.kind);
  j["d"] = w.d;
  j["row_boundaries"] = std::vector<int>(w.division.row_cuts().begin() + 1, w.division.row_cuts().end() - 1);
  j["col_boundaries"] = std::vector<int>(w.division.col_cuts().begin() + 1, w.division.col_cuts().end() - 1);
  Json corners = Json::array();
  for (const auto& c : w.corners) corners.push_back({c.i + 1, c.j + 1, c.r + 1, c.c + 1});
  j["corners"] = corners;
  return j;
}

// Shape checks only; verify_witness decides validity against a graph.
inline MinorWitness witness_from_json(const Json& j, int n) {
  try {
    MinorWitness w;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "almost_mixed") w.kind = MinorKind::AlmostMixed;
    else if (kind == "mixed") w.kind = MinorKind::Mixed;
    else throw InputError("unknown witness kind '" + kind + "'");
    w.d = j.at("d").get<int>();
    if (w.d < 1) throw InputError("witness d must be >= 1");
    auto cuts = [&](const char* key) {
      std::vector<int> out{0};
      for (const auto& b : j.at(key)) out.push_back(b.get<int>());
      out.push_back(n);
      return out;
    };
    w.division = Division(cuts("row_boundaries"), cuts("col_boundaries"));
    for (const auto& c : j.at("corners")) {
      if (!c.is_array() || c.size() != 4) throw InputError("corner must be [i, j, r, c]");
      w.corners.push_back({c[0].get<int>() - 1, c[1].get<int>() - 1, c[2].get<int>() - 1, c[3].get<int>() - 1});
    }
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed witness: ") + e.what());
  }
}

inline MinorWitness parse_witness(const std::string& text, int n) {
  try {
    return witness_from_json(Json::parse(text), n);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed witness JSON: ") + e.what());
  }
}

namespace detail {

inline Json one_based(const VertexList& vs) {
  Json a = Json::array();
  for (auto v : vs) a.push_back(v + 1);
  return a;
}

inline Json one_based_lists(const std::vector<VertexList>& vss) {
  Json a = Json::array();
  for (const auto& vs : vss) a.push_back(one_based(vs));
  return a;
}

}  // namespace detail

// One entry per recursion node. Vertices are 1-based positions in the node's
// own instance; parent_map points into the parent instance.
inline Json trace_to_json(const EngineTrace& trace) {
  Json nodes = Json::array();
  for (const auto& nd : trace.nodes) {
    Json j;
    j["id"] = nd.id;
    j["parent"] = nd.parent;
    j["depth"] = nd.depth;
    j["role"] = to_string(nd.role);
    j["kind"] = to_string(nd.kind);
    j["d"] = nd.d;
    j["n"] = nd.n;
    j["omega"] = nd.omega;
    j["k"] = nd.k;
    j["promise_violated"] = nd.promise_violated;
    j["exact_skipped"] = nd.exact_skipped;
    j["parent_map"] = detail::one_based(nd.parent_map);
    j["palette"] = nd.palette;
    j["colors"] = nd.coloring.color.empty() ? 0 : nd.coloring.num_colors();
    if (nd.kind == NodeKind::Recursive) {
      const auto m = static_cast<std::size_t>(nd.m);
      j["blobs"] = detail::one_based_lists({nd.blobs.begin(), nd.blobs.begin() + static_cast<std::ptrdiff_t>(m)});
      j["rest"] = nd.blobs.size() > m ? detail::one_based(nd.blobs[m]) : Json::array();
      j["rest_node"] = nd.rest_node;
      Json classes = Json::array();
      for (const auto& cr : nd.classes) {
        Json c;
        c["blobs"] = cr.blob_ids;
        c["rich"] = detail::one_based(cr.split.rich);
        c["poor"] = detail::one_based(cr.split.poor);
        c["poor_nodes"] = cr.poor_nodes;
        Json subs = Json::array();
        for (const auto& s : cr.subblobs) {
          Json sj;
          sj["blob"] = s.blob;
          sj["vertices"] = detail::one_based(s.vertices);
          const auto& key = s.bucket.key;
          sj["bucket"] = {key.x, key.y, key.right ? "R" : "L", key.u};
          sj["clique"] = s.bucket.clique;
          sj["node"] = s.node;
          subs.push_back(sj);
        }
        c["subblobs"] = subs;
        Json buckets = Json::array();
        for (const auto& b : cr.buckets) {
          Json bj;
          bj["key"] = {b.key.x, b.key.y, b.key.right ? "R" : "L", b.key.u};
          bj["subblobs"] = b.subblobs;
          Json fcs = Json::array();
          for (const auto& f : b.classes) {
            Json fj;
            fj["lambda2"] = f.lambda2;
            fj["size"] = f.vertices.size();
            fj["clique"] = f.clique;
            fj["bound"] = f.bound;
            fj["node"] = f.node;
            fcs.push_back(fj);
          }
          bj["f_classes"] = fcs;
          buckets.push_back(bj);
        }
        c["buckets"] = buckets;
        classes.push_back(c);
      }
      j["classes"] = classes;
    }
    j["children"] = nd.children;
    nodes.push_back(j);
  }
  Json out;
  out["schema"] = 1;
  out["nodes"] = nodes;
  return out;
}

inline Json caps_to_json(const Caps& c) {
  Json j;
  j["clique"] = c.clique_n;
  j["chromatic"] = c.chromatic_n;
  j["minor_n"] = c.minor_n;
  j["minor_d"] = c.minor_d;
  j["minor_blocks"] = c.minor_blocks;
  j["tww"] = c.twinwidth_n;
  return j;
}

}  // namespace mixedfree
