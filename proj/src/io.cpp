#include "helly/io.hpp"

#include <fstream>
#include <sstream>

namespace helly::io {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw std::runtime_error("schema error at " + (path.empty() ? "/" : path) + ": " + msg);
}

const json& expect(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(path, std::string("missing key \"") + key + "\"");
  return *it;
}

double expect_number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

Vec vector_from_json(const json& j, int dim, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of numbers");
  if (dim >= 0 && static_cast<int>(j.size()) != dim) {
    schema_error(path, "expected " + std::to_string(dim) + " coordinates, got " +
                           std::to_string(j.size()));
  }
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[i] = expect_number(j[i], path + "/" + std::to_string(i));
  }
  return v;
}

json vector_to_json(const Vec& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

}  // namespace

json to_json(const NormSpec& space) {
  json j;
  j["dim"] = space.dim;
  if (space.p.is_infinite()) {
    j["p"] = "inf";
  } else {
    j["p"] = space.p.value();
  }
  return j;
}

NormSpec space_from_json(const json& j, const std::string& path) {
  const json& pj = expect(j, "p", path);
  Exponent p = Exponent::finite(2.0);
  if (pj.is_string()) {
    if (pj.get<std::string>() != "inf") schema_error(path + "/p", "expected a number or \"inf\"");
    p = Exponent::infinity();
  } else if (pj.is_number()) {
    p = Exponent::finite(pj.get<double>());
  } else {
    schema_error(path + "/p", "expected a number or \"inf\"");
  }
  const json& dj = expect(j, "dim", path);
  if (!dj.is_number_integer() || dj.get<int>() < 1) {
    schema_error(path + "/dim", "expected a positive integer");
  }
  return NormSpec(dj.get<int>(), p);
}

json to_json(const VPolytope& K) {
  json verts = json::array();
  for (const Vec& v : K.vertices) verts.push_back(vector_to_json(v));
  return json{{"vertices", verts}};
}

namespace {

VPolytope polytope_from_json(const json& j, int dim, const std::string& path) {
  const json& vj = expect(j, "vertices", path);
  if (!vj.is_array() || vj.empty()) schema_error(path + "/vertices", "expected a nonempty array");
  std::vector<Vec> verts;
  for (std::size_t i = 0; i < vj.size(); ++i) {
    verts.push_back(vector_from_json(vj[i], dim, path + "/vertices/" + std::to_string(i)));
  }
  return VPolytope(std::move(verts));
}

}  // namespace

json to_json(const ColorfulFamily& fam, const WitnessMap* witnesses) {
  json colors = json::array();
  for (const auto& color : fam.colors) {
    json sets = json::array();
    for (const VPolytope& K : color) sets.push_back(to_json(K));
    colors.push_back(sets);
  }
  json j;
  j["space"] = to_json(fam.space);
  j["colors"] = colors;
  if (witnesses && !witnesses->empty()) {
    json w = json::object();
    for (const auto& [key, vec] : *witnesses) w[witness_key(key)] = vector_to_json(vec);
    j["witnesses"] = w;
  }
  return j;
}

json to_json(const Family& fam) { return to_json(to_colorful(fam)); }

ColorfulFamily colorful_from_json(const json& j) {
  ColorfulFamily fam;
  fam.space = space_from_json(expect(j, "space", ""), "/space");
  const json& cj = expect(j, "colors", "");
  if (!cj.is_array() || cj.empty()) schema_error("/colors", "expected a nonempty array of colors");
  for (std::size_t i = 0; i < cj.size(); ++i) {
    std::string cpath = "/colors/" + std::to_string(i);
    if (!cj[i].is_array() || cj[i].empty()) schema_error(cpath, "expected a nonempty array of sets");
    std::vector<VPolytope> sets;
    for (std::size_t s = 0; s < cj[i].size(); ++s) {
      sets.push_back(polytope_from_json(cj[i][s], fam.space.dim, cpath + "/" + std::to_string(s)));
    }
    fam.colors.push_back(std::move(sets));
  }
  validate_family(fam);
  return fam;
}

Family family_from_json(const json& j) {
  ColorfulFamily cf = colorful_from_json(j);
  Family f;
  f.space = cf.space;
  for (auto& color : cf.colors) {
    for (auto& K : color) f.sets.push_back(std::move(K));
  }
  return f;
}

WitnessMap witnesses_from_json(const json& j, int dim) {
  WitnessMap out;
  if (!j.contains("witnesses")) return out;
  const json& wj = j["witnesses"];
  if (!wj.is_object()) schema_error("/witnesses", "expected an object keyed by index lists");
  for (auto it = wj.begin(); it != wj.end(); ++it) {
    std::vector<int> key = parse_witness_key(it.key(), "/witnesses");
    out[key] = vector_from_json(it.value(), dim, "/witnesses/" + it.key());
  }
  return out;
}

json to_json(const LowerCertificate& cert) {
  json f = json::array();
  for (const Vec& psi : cert.functionals) f.push_back(vector_to_json(psi));
  return json{{"functionals", f}, {"bound", cert.bound}};
}

LowerCertificate certificate_from_json(const json& j) {
  LowerCertificate cert;
  const json& fj = expect(j, "functionals", "");
  if (!fj.is_array() || fj.empty()) schema_error("/functionals", "expected a nonempty array");
  for (std::size_t i = 0; i < fj.size(); ++i) {
    cert.functionals.push_back(vector_from_json(fj[i], -1, "/functionals/" + std::to_string(i)));
  }
  cert.bound = expect_number(expect(j, "bound", ""), "/bound");
  return cert;
}

json to_json(const HellyOutcome& outcome) {
  json j;
  j["center"] = vector_to_json(outcome.center);
  j["radii"] = outcome.radii;
  j["objective"] = outcome.objective;
  j["active"] = outcome.active;
  j["certificate_residual"] = outcome.certificate_residual;
  j["certified"] = outcome.certified;
  j["iterations"] = outcome.iterations;
  if (!outcome.message.empty()) j["message"] = outcome.message;
  return j;
}

json to_json(const PointCloud& cloud) {
  json pts = json::array();
  for (const Vec& u : cloud.points) pts.push_back(vector_to_json(u));
  json j{{"points", pts}};
  if (cloud.weights) {
    json w = json::array();
    for (int i = 0; i < cloud.weights->size(); ++i) w.push_back((*cloud.weights)[i]);
    j["weights"] = w;
  }
  return j;
}

PointCloud cloud_from_json(const json& j, const std::string& path) {
  PointCloud cloud;
  const json& pj = expect(j, "points", path);
  if (!pj.is_array() || pj.empty()) schema_error(path + "/points", "expected a nonempty array");
  int dim = -1;
  for (std::size_t i = 0; i < pj.size(); ++i) {
    cloud.points.push_back(vector_from_json(pj[i], dim, path + "/points/" + std::to_string(i)));
    dim = static_cast<int>(cloud.points.back().size());
  }
  if (j.contains("weights")) {
    const json& wj = j["weights"];
    if (!wj.is_array() || wj.size() != pj.size()) {
      schema_error(path + "/weights", "expected one weight per point");
    }
    Eigen::VectorXd w(wj.size());
    for (std::size_t i = 0; i < wj.size(); ++i) {
      w[i] = expect_number(wj[i], path + "/weights/" + std::to_string(i));
    }
    cloud.weights = w;
  }
  return cloud;
}

json to_json(const MaureyResult& r) {
  json j;
  j["indices"] = r.indices;
  j["average"] = vector_to_json(r.average);
  j["norm"] = r.norm;
  j["trials_used"] = r.trials_used;
  j["seed"] = r.seed;
  return j;
}

json to_json(const CounterexampleInstance& inst) {
  json j = to_json(to_colorful(inst.family), &inst.witnesses);
  j["k"] = inst.k;
  j["a_k"] = inst.a_k;
  j["certificate"] = to_json(inst.certificate());
  return j;
}

std::string witness_key(const std::vector<int>& subset) {
  std::ostringstream os;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) os << ',';
    os << subset[i];
  }
  return os.str();
}

std::vector<int> parse_witness_key(const std::string& key, const std::string& path) {
  std::vector<int> out;
  std::istringstream is(key);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      schema_error(path, "bad index list \"" + key + "\"");
    }
  }
  if (out.empty()) schema_error(path, "empty index list");
  return out;
}

json load_json_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw std::runtime_error("cannot open " + filename);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error(filename + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& filename, const json& j) {
  std::ofstream out(filename);
  if (!out) throw std::runtime_error("cannot open " + filename + " for writing");
  out << j.dump(2) << '\n';
}

}  // namespace helly::io
