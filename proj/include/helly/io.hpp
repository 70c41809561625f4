#pragma once

#include <string>

#include <json.hpp>

#include "helly/caratheodory.hpp"
#include "helly/counterexample.hpp"
#include "helly/helly_solver.hpp"
#include "helly/normed_space.hpp"

namespace helly::io {

using json = nlohmann::json;

// Instance format:
//   {"space": {"p": number | "inf", "dim": int},
//    "colors": [[{"vertices": [[...], ...]}, ...], ...],
//    "witnesses": {"0,1,3": [...], ...}}        (optional)
// A plain family is the one-color special case. Parse errors throw
// std::runtime_error carrying the JSON path of the offending node.

json to_json(const NormSpec& space);
NormSpec space_from_json(const json& j, const std::string& path = "/space");

json to_json(const VPolytope& K);
json to_json(const ColorfulFamily& fam, const WitnessMap* witnesses = nullptr);
json to_json(const Family& fam);

ColorfulFamily colorful_from_json(const json& j);
Family family_from_json(const json& j);  // flattens all colors into one list
WitnessMap witnesses_from_json(const json& j, int dim);

json to_json(const LowerCertificate& cert);
LowerCertificate certificate_from_json(const json& j);

json to_json(const HellyOutcome& outcome);

json to_json(const PointCloud& cloud);
PointCloud cloud_from_json(const json& j, const std::string& path = "");
json to_json(const MaureyResult& r);

json to_json(const CounterexampleInstance& inst);

std::string witness_key(const std::vector<int>& subset);
std::vector<int> parse_witness_key(const std::string& key, const std::string& path);

json load_json_file(const std::string& filename);
void save_json_file(const std::string& filename, const json& j);

}  // namespace helly::io
