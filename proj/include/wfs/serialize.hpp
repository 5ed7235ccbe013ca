#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wfs/bipartite.hpp"
#include "wfs/scenario.hpp"
#include "wfs/witness.hpp"

// JSON layer. Complex numbers are [re, im]; vectors are arrays of those;
// matrices are row-major nested arrays. Parsing validates the physics
// invariants and surfaces them as std::invalid_argument with the failed
// check named.

namespace wfs {

using json = nlohmann::json;

namespace detail {

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("malformed complex entry, expected [re, im]");
  return cplx(j[0].get<double>(), j[1].get<double>());
}

inline json to_json(const CVec& v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) out.push_back(to_json(v[i]));
  return out;
}

inline CVec vec_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("malformed vector entry");
  CVec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = complex_from_json(j[i]);
  return v;
}

inline json to_json(const CMat& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

inline CMat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw std::invalid_argument("malformed matrix entry");
  const std::size_t rows = j.size(), cols = j[0].size();
  CMat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw std::invalid_argument("malformed matrix entry, ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

inline json op_to_json(const SuperObserverOp& op) {
  json j;
  switch (op.kind) {
    case SuperObserverOp::Kind::Identity: j["kind"] = "identity"; break;
    case SuperObserverOp::Kind::BlockUnitary: {
      j["kind"] = "block_unitary";
      json blocks = json::array();
      for (const CMat& b : op.blocks) blocks.push_back(to_json(b));
      j["blocks"] = std::move(blocks);
      break;
    }
    case SuperObserverOp::Kind::UnitalChannel: {
      j["kind"] = "unital_channel";
      json kraus = json::array();
      for (const CMat& k : op.kraus) kraus.push_back(to_json(k));
      j["kraus"] = std::move(kraus);
      break;
    }
  }
  return j;
}

inline SuperObserverOp op_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw std::invalid_argument("op entry must carry a string 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "identity") return SuperObserverOp::identity();
  if (kind == "block_unitary") {
    if (!j.contains("blocks")) throw std::invalid_argument("block_unitary op needs 'blocks'");
    std::vector<CMat> blocks;
    for (const json& b : j["blocks"]) blocks.push_back(mat_from_json(b));
    return SuperObserverOp::block_unitary(std::move(blocks));
  }
  if (kind == "unital_channel") {
    if (!j.contains("kraus")) throw std::invalid_argument("unital_channel op needs 'kraus'");
    std::vector<CMat> kraus;
    for (const json& k : j["kraus"]) kraus.push_back(mat_from_json(k));
    return SuperObserverOp::unital_channel(std::move(kraus));
  }
  throw std::invalid_argument("unknown op kind '" + kind + "'");
}

inline Dynamics dynamics_from_json(const json& j) {
  if (!j.is_string()) throw std::invalid_argument("'dynamics' must be \"AoM\" or \"NoM\"");
  const std::string s = j.get<std::string>();
  if (s == "AoM") return Dynamics::AoM;
  if (s == "NoM") return Dynamics::NoM;
  throw std::invalid_argument("'dynamics' must be \"AoM\" or \"NoM\"");
}

template <typename T>
std::size_t size_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned())
    throw std::invalid_argument(std::string("missing or malformed '") + key + "'");
  return j[key].get<std::size_t>();
}

}  // namespace detail

inline json scenario_to_json(const Scenario& s) {
  json j;
  j["d"] = s.d;
  j["n"] = s.n;
  j["m"] = s.m();
  if (s.extra_junk != 0) j["extra_junk"] = s.extra_junk;
  j["dynamics"] = to_string(s.dynamics);
  j["psi"] = detail::to_json(s.psi);
  json meas = json::array();
  for (const FriendMeasurement& fm : s.measurements) {
    json basis = json::array();
    for (const CVec& v : fm.basis) basis.push_back(detail::to_json(v));
    meas.push_back(std::move(basis));
  }
  j["measurements"] = std::move(meas);
  json ops = json::array();
  for (const SuperObserverOp& op : s.ops) ops.push_back(detail::op_to_json(op));
  j["ops"] = std::move(ops);
  return j;
}

inline Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("scenario must be a JSON object");
  Scenario s;
  s.d = detail::size_field<std::size_t>(j, "d");
  s.n = detail::size_field<std::size_t>(j, "n");
  if (j.contains("extra_junk")) s.extra_junk = detail::size_field<std::size_t>(j, "extra_junk");
  if (!j.contains("dynamics")) throw std::invalid_argument("missing 'dynamics'");
  s.dynamics = detail::dynamics_from_json(j["dynamics"]);
  if (!j.contains("psi")) throw std::invalid_argument("missing 'psi'");
  s.psi = detail::vec_from_json(j["psi"]);
  if (!j.contains("measurements") || !j["measurements"].is_array())
    throw std::invalid_argument("missing 'measurements'");
  for (const json& basis : j["measurements"]) {
    if (!basis.is_array()) throw std::invalid_argument("malformed measurement basis");
    FriendMeasurement fm;
    for (const json& v : basis) fm.basis.push_back(detail::vec_from_json(v));
    s.measurements.push_back(std::move(fm));
  }
  if (!j.contains("ops") || !j["ops"].is_array()) throw std::invalid_argument("missing 'ops'");
  for (const json& op : j["ops"]) s.ops.push_back(detail::op_from_json(op));
  if (j.contains("m") && j["m"].get<std::size_t>() != s.ops.size())
    throw std::invalid_argument("'m' disagrees with the number of ops");
  s.validate();
  return s;
}

inline bool is_bipartite_json(const json& j) {
  return j.is_object() && j.contains("bipartite") && j["bipartite"].is_boolean() &&
         j["bipartite"].get<bool>();
}

inline json bipartite_to_json(const BipartiteScenario& bs) {
  json j;
  j["bipartite"] = true;
  j["d_b"] = bs.d_b;
  j["dynamics"] = to_string(bs.dynamics);
  j["psi_ab"] = detail::to_json(bs.psi_ab);
  json alice = json::array();
  for (const FriendMeasurement& fm : bs.alice) {
    json basis = json::array();
    for (const CVec& v : fm.basis) basis.push_back(detail::to_json(v));
    alice.push_back(std::move(basis));
  }
  j["alice"] = std::move(alice);
  json bob = json::array();
  for (const BobMeasurement& bm : bs.bob)
    bob.push_back(json::array({detail::to_json(bm.proj[0]), detail::to_json(bm.proj[1])}));
  j["bob"] = std::move(bob);
  json ops = json::array();
  for (const SuperObserverOp& op : bs.ops) ops.push_back(detail::op_to_json(op));
  j["ops"] = std::move(ops);
  return j;
}

inline BipartiteScenario bipartite_from_json(const json& j) {
  if (!is_bipartite_json(j)) throw std::invalid_argument("not a bipartite scenario");
  BipartiteScenario bs;
  bs.d_b = detail::size_field<std::size_t>(j, "d_b");
  if (!j.contains("dynamics")) throw std::invalid_argument("missing 'dynamics'");
  bs.dynamics = detail::dynamics_from_json(j["dynamics"]);
  if (!j.contains("psi_ab")) throw std::invalid_argument("missing 'psi_ab'");
  bs.psi_ab = detail::vec_from_json(j["psi_ab"]);
  if (!j.contains("alice") || !j["alice"].is_array() || j["alice"].size() != 2)
    throw std::invalid_argument("'alice' must list two bases");
  for (std::size_t x = 0; x < 2; ++x) {
    FriendMeasurement fm;
    for (const json& v : j["alice"][x]) fm.basis.push_back(detail::vec_from_json(v));
    bs.alice[x] = std::move(fm);
  }
  if (!j.contains("bob") || !j["bob"].is_array() || j["bob"].size() != 2)
    throw std::invalid_argument("'bob' must list two measurements");
  for (std::size_t y = 0; y < 2; ++y) {
    if (!j["bob"][y].is_array() || j["bob"][y].size() != 2)
      throw std::invalid_argument("each bob measurement needs two projectors");
    bs.bob[y].proj[0] = detail::mat_from_json(j["bob"][y][0]);
    bs.bob[y].proj[1] = detail::mat_from_json(j["bob"][y][1]);
  }
  if (!j.contains("ops") || !j["ops"].is_array()) throw std::invalid_argument("missing 'ops'");
  for (const json& op : j["ops"]) bs.ops.push_back(detail::op_from_json(op));
  bs.validate();
  return bs;
}

/// FNV-1a over the canonical JSON rendering; same role as scenario_digest.
inline std::string bipartite_digest(const BipartiteScenario& bs) {
  const std::string dump = bipartite_to_json(bs).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline json report_to_json(const WitnessReport& r) {
  json j;
  j["witness"] = r.witness;
  j["value"] = r.value;
  j["bound"] = r.bound;
  j["violated"] = r.violated;
  j["digest"] = r.digest;
  j["seed"] = r.seed;
  j["tolerance"] = r.tolerance;
  return j;
}

inline json table_to_json(const JointTable& t) {
  json j;
  char key[32];
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t w = 0; w < 2; ++w)
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t b = 0; b < 2; ++b) {
            std::snprintf(key, sizeof key, "p(%zu,%zu|%zu,%zu,%zu)", a, b, x, y, w);
            j[key] = t.p(a, b, x, y, w);
          }
  return j;
}

inline json ps_report_to_json(const PSReport& r) {
  json j;
  j["P0"] = r.p0;
  j["P1"] = r.p1;
  j["PS"] = r.ps;
  j["P1_bound"] = r.p1_bound;
  j["PS_bound"] = r.ps_bound;
  j["P1_violated"] = r.p1_violated;
  j["PS_violated"] = r.ps_violated;
  return j;
}

}  // namespace wfs
