#pragma once

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cohesion/fixtures.hpp"
#include "cohesion/harness.hpp"

namespace cohesion {

namespace detail {
using ojson = nlohmann::ordered_json;

inline ojson read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("file not found: " + path.string());
  try {
    return ojson::parse(in, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("invalid JSON in " + path.string() + ": " + e.what());
  }
}
}  // namespace detail

/// Plan fields as written to reports and accepted by plan files.
inline nlohmann::ordered_json plan_json(const EvalPlan& p) {
  detail::ojson j;
  j["dataset"] = p.dataset.generic_string();
  j["algorithm"] = std::string(to_string(p.algorithm));
  j["grid"] = detail::ojson::array();
  for (const auto& params : p.grid) {
    detail::ojson g = detail::ojson::object();
    for (const auto& [k, v] : params) g[k] = v;
    j["grid"].push_back(g);
  }
  j["n_queries"] = p.n_queries;
  j["seed"] = p.rng_seed;
  j["decay"] = {{"kind", std::string(to_string(p.excitation.decay.kind))}, {"rate", p.excitation.decay.rate}};
  j["excitation"] = {{"lambda0", p.excitation.lambda0}};
  j["t_cur"] = p.t_cur ? detail::ojson(*p.t_cur) : detail::ojson(nullptr);
  j["window"] = p.window ? detail::ojson{{"t0", p.window->t0}, {"time_unit", p.window->time_unit}}
                         : detail::ojson(nullptr);
  j["hit_mode"] = std::string(to_string(p.hit_mode));
  j["largest_component"] = p.largest_component;
  j["self_loop_degree"] = static_cast<int>(p.self_loop_degree);
  j["threads"] = p.threads;
  j["time_budget_seconds"] = p.time_budget_seconds;
  return j;
}

/// Parses plan fields. Unknown keys are rejected; relative dataset paths are
/// resolved against `base_dir`.
inline EvalPlan plan_from_json(const nlohmann::ordered_json& j, const std::filesystem::path& base_dir = {}) {
  static const std::array<std::string_view, 14> known = {
      "dataset", "algorithm", "grid",     "n_queries",         "seed",    "decay",
      "excitation", "t_cur",  "window",   "hit_mode",          "largest_component",
      "self_loop_degree", "threads", "time_budget_seconds"};
  if (!j.is_object()) throw Error("plan must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw Error("unknown plan key '" + key + "'");

  EvalPlan p;
  try {
    if (!j.contains("dataset")) throw Error("plan is missing 'dataset'");
    std::filesystem::path ds = j.at("dataset").get<std::string>();
    p.dataset = ds.is_relative() && !base_dir.empty() ? base_dir / ds : ds;
    if (j.contains("algorithm")) p.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      p.grid.clear();
      if (g.is_array()) {
        for (const auto& entry : g) {
          Params params;
          for (const auto& [k, v] : entry.items()) params[k] = v.get<std::int64_t>();
          p.grid.push_back(std::move(params));
        }
      } else if (g.is_object()) {
        // {"k": [1, 2], "l": [1, 3]} expands to every combination.
        p.grid.push_back({});
        for (const auto& [k, values] : g.items()) {
          std::vector<Params> next;
          for (const auto& base : p.grid) {
            for (const auto& v : values) {
              Params params = base;
              params[k] = v.get<std::int64_t>();
              next.push_back(std::move(params));
            }
          }
          p.grid = std::move(next);
        }
      } else {
        throw Error("'grid' must be an array of parameter maps or an object of value lists");
      }
    }
    if (j.contains("n_queries")) p.n_queries = j.at("n_queries").get<std::size_t>();
    if (j.contains("seed")) p.rng_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("decay")) {
      for (const auto& [key, v] : j.at("decay").items()) {
        if (key == "kind") p.excitation.decay.kind = parse_decay_kind(v.get<std::string>());
        else if (key == "rate") p.excitation.decay.rate = v.get<double>();
        else throw Error("unknown plan key 'decay." + key + "'");
      }
    }
    if (j.contains("excitation")) {
      for (const auto& [key, v] : j.at("excitation").items()) {
        if (key == "lambda0") p.excitation.lambda0 = v.get<double>();
        else throw Error("unknown plan key 'excitation." + key + "'");
      }
    }
    if (j.contains("t_cur") && !j.at("t_cur").is_null()) p.t_cur = j.at("t_cur").get<Timestamp>();
    if (j.contains("window") && !j.at("window").is_null()) {
      ObservationWindow w;
      for (const auto& [key, v] : j.at("window").items()) {
        if (key == "t0") w.t0 = v.get<Timestamp>();
        else if (key == "time_unit") w.time_unit = v.get<double>();
        else throw Error("unknown plan key 'window." + key + "'");
      }
      p.window = w;
    }
    if (j.contains("hit_mode")) p.hit_mode = parse_hit_mode(j.at("hit_mode").get<std::string>());
    if (j.contains("largest_component")) p.largest_component = j.at("largest_component").get<bool>();
    if (j.contains("self_loop_degree")) {
      auto v = j.at("self_loop_degree").get<int>();
      if (v != 1 && v != 2) throw Error("'self_loop_degree' must be 1 or 2");
      p.self_loop_degree = static_cast<SelfLoopDegree>(v);
    }
    if (j.contains("threads")) p.threads = j.at("threads").get<std::size_t>();
    if (j.contains("time_budget_seconds")) p.time_budget_seconds = j.at("time_budget_seconds").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid plan: ") + e.what());
  }
  p.validate();
  return p;
}

/// Reads a plan file; the dataset must exist.
inline EvalPlan load_plan(const std::filesystem::path& path) {
  EvalPlan p = plan_from_json(detail::read_json_file(path), path.parent_path());
  if (!std::filesystem::exists(p.dataset)) throw Error("file not found: " + p.dataset.string());
  return p;
}

/// Fixture settings from JSON. Every key is optional; unknown keys are rejected.
inline FixtureSpec fixture_spec_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw Error("fixture spec must be a JSON object");
  FixtureSpec s;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "n_communities") s.n_communities = v.get<std::size_t>();
      else if (key == "community_size") s.community_size = v.get<std::size_t>();
      else if (key == "intra_event_rate") s.intra_event_rate = v.get<double>();
      else if (key == "inter_event_rate") s.inter_event_rate = v.get<double>();
      else if (key == "self_loop_rate") s.self_loop_rate = v.get<double>();
      else if (key == "sentiment_mix") {
        s.p_pos = v.at("pos").get<double>();
        s.p_neu = v.at("neu").get<double>();
        s.p_neg = v.at("neg").get<double>();
      } else if (key == "time_span") s.time_span = v.get<Timestamp>();
      else if (key == "seed") s.rng_seed = v.get<std::uint64_t>();
      else throw Error("unknown fixture key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid fixture spec: ") + e.what());
  }
  s.validate();
  return s;
}

inline FixtureSpec load_fixture_spec(const std::filesystem::path& path) {
  return fixture_spec_from_json(detail::read_json_file(path));
}

}  // namespace cohesion
