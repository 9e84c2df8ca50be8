#pragma once

// JSON serialization of states and user-defined observable sets.

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "genent/basis.hpp"
#include "genent/error.hpp"
#include "genent/observables.hpp"
#include "genent/state.hpp"

namespace genent {

using Json = nlohmann::json;

inline Json basis_to_json(const SectorBasis& b) {
  Json j{{"n", b.sites()}, {"d", b.local_dim()}};
  if (b.is_full()) j["sector"] = "full";
  else j["sector"] = Json{{"magnetization", *b.magnetization()}};
  return j;
}

inline BasisPtr basis_from_json(const Json& j) {
  require(j.is_object() && j.contains("n"), ErrorKind::InvalidArgument, "basis descriptor needs 'n'");
  const int n = j.at("n").get<int>();
  const int d = j.value("d", 2);
  if (!j.contains("sector") || j.at("sector") == "full") return make_full_basis(n, d);
  const auto& s = j.at("sector");
  require(s.is_object() && s.contains("magnetization"), ErrorKind::InvalidArgument,
          "sector must be \"full\" or {\"magnetization\": m}");
  require(d == 2, ErrorKind::InvalidSector, "magnetization sectors need d = 2");
  return make_sector(n, s.at("magnetization").get<int>());
}

inline Json state_to_json(const PureState& psi) {
  Json amps = Json::array();
  for (const auto& a : psi.amplitudes()) amps.push_back(Json::array({a.real(), a.imag()}));
  return Json{{"basis", basis_to_json(psi.basis())}, {"amplitudes", std::move(amps)}};
}

/// Amplitudes are [re, im] pairs or bare reals; normalization is re-checked.
inline PureState state_from_json(const Json& j) {
  try {
    require(j.is_object() && j.contains("basis") && j.contains("amplitudes"), ErrorKind::InvalidArgument,
            "state JSON needs 'basis' and 'amplitudes'");
    auto basis = basis_from_json(j.at("basis"));
    Amplitudes a;
    for (const auto& v : j.at("amplitudes")) {
      if (v.is_number()) a.emplace_back(v.get<double>(), 0.0);
      else {
        require(v.is_array() && v.size() == 2, ErrorKind::InvalidArgument, "amplitude must be [re, im]");
        a.emplace_back(v[0].get<double>(), v[1].get<double>());
      }
    }
    return PureState(std::move(basis), std::move(a));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("malformed state JSON: ") + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidArgument, "cannot parse '" + path + "': " + e.what());
  }
}

inline PureState load_state(const std::string& path) { return state_from_json(read_json_file(path)); }

/// Either a list of strings / {"pauli": s, "coeff": c} objects, or an object
/// {"label", "kappa", "ops": [...]}.
inline ObservableSet observable_set_from_json(const Json& j) {
  try {
    const Json& list = j.is_object() ? j.at("ops") : j;
    require(list.is_array(), ErrorKind::InvalidArgument, "observable set must be a list of Pauli strings");
    std::vector<std::pair<std::string, double>> strings;
    for (const auto& e : list) {
      if (e.is_string()) strings.emplace_back(e.get<std::string>(), 1.0);
      else strings.emplace_back(e.at("pauli").get<std::string>(), e.value("coeff", 1.0));
    }
    std::optional<double> kappa;
    std::string label = "custom";
    if (j.is_object()) {
      if (j.contains("kappa")) kappa = j.at("kappa").get<double>();
      label = j.value("label", label);
    }
    return pauli_set(label, strings, kappa);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("malformed observable set: ") + e.what());
  }
}

}  // namespace genent
