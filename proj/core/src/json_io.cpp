#include "declab/json_io.hpp"

#include <algorithm>
#include <string>

#include "declab/errors.hpp"

namespace declab {

void require_keys(const json& j, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional) {
  if (!j.is_object()) throw InvalidParamsError("expected a JSON object");
  for (const char* key : required) {
    if (!j.contains(key)) {
      throw InvalidParamsError(std::string("missing key: ") + key);
    }
  }
  for (const auto& [key, value] : j.items()) {
    const auto match = [&key](const char* k) { return key == k; };
    if (!std::any_of(required.begin(), required.end(), match) &&
        !std::any_of(optional.begin(), optional.end(), match)) {
      throw InvalidParamsError("unknown key: " + key);
    }
  }
}

json outcome_to_json(const OutcomeDist& dist) {
  switch (dist.kind()) {
    case DistKind::Bernoulli:
      return {{"kind", "bernoulli"}, {"mu", dist.mu()}};
    case DistKind::Rademacher:
      return {{"kind", "rademacher"}, {"mu", dist.mu()}};
    case DistKind::Gaussian:
      return {{"kind", "gaussian"}, {"mean", dist.mu()}, {"variance", dist.variance()}};
    case DistKind::Categorical: {
      json support = json::array();
      for (const auto& atom : dist.support()) {
        support.push_back({{"reward", atom.reward}, {"label", atom.label}});
      }
      return {{"kind", "categorical"}, {"support", support}, {"probs", dist.probs()}};
    }
    case DistKind::PointMass:
      return {{"kind", "pointmass"}, {"reward", dist.mu()}};
  }
  throw InvalidParamsError("unknown outcome kind");
}

OutcomeDist outcome_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw InvalidParamsError("outcome needs a kind");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "bernoulli") {
    require_keys(j, {"kind", "mu"});
    return OutcomeDist::bernoulli(j.at("mu").get<double>());
  }
  if (kind == "rademacher") {
    require_keys(j, {"kind", "mu"});
    return OutcomeDist::rademacher(j.at("mu").get<double>());
  }
  if (kind == "gaussian") {
    require_keys(j, {"kind", "mean", "variance"});
    return OutcomeDist::gaussian(j.at("mean").get<double>(),
                                 j.at("variance").get<double>());
  }
  if (kind == "categorical") {
    require_keys(j, {"kind", "support", "probs"});
    std::vector<CategoricalAtom> support;
    for (const auto& atom : j.at("support")) {
      require_keys(atom, {"reward"}, {"label"});
      support.push_back({atom.at("reward").get<double>(),
                         atom.value("label", std::string())});
    }
    return OutcomeDist::categorical(std::move(support),
                                    j.at("probs").get<std::vector<double>>());
  }
  if (kind == "pointmass") {
    require_keys(j, {"kind", "reward"});
    return OutcomeDist::point_mass(j.at("reward").get<double>());
  }
  throw InvalidParamsError("unknown outcome kind: " + kind);
}

json model_class_to_json(const ModelClass& cls) {
  json models = json::array();
  for (const Model& m : cls.models) {
    json outcomes = json::array();
    for (const OutcomeDist& d : m.outcomes()) outcomes.push_back(outcome_to_json(d));
    models.push_back({{"outcomes", outcomes}});
  }
  json out = {{"decisions", cls.num_decisions()}, {"models", models}};
  if (cls.truth_index) out["truth"] = *cls.truth_index;
  return out;
}

ModelClass model_class_from_json(const json& j) {
  require_keys(j, {"decisions", "models"}, {"truth"});
  ModelClass cls;
  for (const auto& mj : j.at("models")) {
    require_keys(mj, {"outcomes"});
    std::vector<OutcomeDist> outcomes;
    for (const auto& oj : mj.at("outcomes")) outcomes.push_back(outcome_from_json(oj));
    cls.models.emplace_back(std::move(outcomes));
  }
  if (j.contains("truth")) cls.truth_index = j.at("truth").get<int>();
  cls.validate();
  if (cls.num_decisions() != j.at("decisions").get<int>()) {
    throw InvalidParamsError("decision count does not match the models");
  }
  return cls;
}

json mdp_to_json(const TabularMdp& mdp) {
  const int horizon = mdp.horizon(), states = mdp.states(), actions = mdp.actions();
  json kernels = json::array();
  for (int h = 0; h + 1 < horizon; ++h) {
    json layer = json::array();
    for (int s = 0; s < states; ++s) {
      json row = json::array();
      for (int a = 0; a < actions; ++a) {
        json next = json::array();
        for (int s2 = 0; s2 < states; ++s2) next.push_back(mdp.kernel(h, s, a, s2));
        row.push_back(next);
      }
      layer.push_back(row);
    }
    kernels.push_back(layer);
  }
  json rewards = json::array();
  for (int h = 0; h < horizon; ++h) {
    json layer = json::array();
    for (int s = 0; s < states; ++s) {
      json row = json::array();
      for (int a = 0; a < actions; ++a) row.push_back(outcome_to_json(mdp.reward(h, s, a)));
      layer.push_back(row);
    }
    rewards.push_back(layer);
  }
  return {{"H", horizon}, {"S", states}, {"A", actions},
          {"P", kernels}, {"R", rewards}, {"d1", mdp.initial()}};
}

TabularMdp mdp_from_json(const json& j) {
  require_keys(j, {"H", "S", "A", "P", "R", "d1"});
  const int horizon = j.at("H").get<int>();
  const int states = j.at("S").get<int>();
  const int actions = j.at("A").get<int>();
  TabularMdp mdp(horizon, states, actions);
  const auto& kernels = j.at("P");
  if (static_cast<int>(kernels.size()) != std::max(0, horizon - 1)) {
    throw InvalidParamsError("kernel layer count must be H-1");
  }
  for (int h = 0; h + 1 < horizon; ++h) {
    for (int s = 0; s < states; ++s) {
      for (int a = 0; a < actions; ++a) {
        const auto& row = kernels.at(h).at(s).at(a);
        for (int s2 = 0; s2 < states; ++s2) {
          mdp.set_kernel(h, s, a, s2, row.at(s2).get<double>());
        }
      }
    }
  }
  for (int h = 0; h < horizon; ++h) {
    for (int s = 0; s < states; ++s) {
      for (int a = 0; a < actions; ++a) {
        mdp.set_reward(h, s, a, outcome_from_json(j.at("R").at(h).at(s).at(a)));
      }
    }
  }
  mdp.set_initial(j.at("d1").get<std::vector<double>>());
  mdp.validate();
  return mdp;
}

DivergenceKind divergence_from_name(const std::string& name) {
  if (name == "hellinger") return DivergenceKind::HellingerSq;
  if (name == "kl") return DivergenceKind::KL;
  if (name == "tv") return DivergenceKind::TV;
  if (name == "squared") return DivergenceKind::SquaredMean;
  if (name == "bilinear") return DivergenceKind::Bilinear;
  throw InvalidParamsError("unknown divergence: " + name);
}

}  // namespace declab
