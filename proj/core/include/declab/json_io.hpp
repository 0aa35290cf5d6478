#pragma once

#include <nlohmann/json.hpp>

#include "declab/divergence.hpp"
#include "declab/mdp.hpp"
#include "declab/model.hpp"

namespace declab {

using json = nlohmann::json;

// Outcome distributions: {"kind":"bernoulli","mu":0.6} and analogous forms;
// categorical lists its support explicitly.
json outcome_to_json(const OutcomeDist& dist);
OutcomeDist outcome_from_json(const json& j);

// Model-class files: {"decisions":A,"models":[{"outcomes":[...]},...],"truth":k}.
json model_class_to_json(const ModelClass& cls);
ModelClass model_class_from_json(const json& j);

// MDP files: {"H":..,"S":..,"A":..,"P":[...],"R":[...],"d1":[...]} with
// P indexed [h][s][a][s'] and R indexed [h][s][a].
json mdp_to_json(const TabularMdp& mdp);
TabularMdp mdp_from_json(const json& j);

DivergenceKind divergence_from_name(const std::string& name);

/// Rejects objects carrying keys outside the given schema.
void require_keys(const json& j, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {});

}  // namespace declab
