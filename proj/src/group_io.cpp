#include "hogroup/group_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hogroup/error.hpp"
#include "json.hpp"

namespace hogroup {

using nlohmann::json;

GradedAlgebra parse_algebra(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error("group", "parse", e.what());
  }
  try {
    std::string name = j.value("name", std::string("unnamed"));
    auto weights = j.at("weights").get<std::vector<int>>();
    if (j.contains("dim") && j.at("dim").get<int>() != static_cast<int>(weights.size()))
      throw Error("group", "dimension", "dim does not match the weight list");
    std::vector<Bracket> br;
    if (j.contains("brackets"))
      for (const auto& b : j.at("brackets"))
        br.push_back({b.at("i").get<int>() - 1, b.at("j").get<int>() - 1,
                      b.at("k").get<int>() - 1, b.at("c").get<double>()});
    return GradedAlgebra::create(std::move(name), std::move(weights), std::move(br));
  } catch (const json::exception& e) {
    throw Error("group", "parse", e.what());
  }
}

GradedAlgebra load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("group", "io", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_algebra(ss.str());
}

std::string algebra_to_json(const GradedAlgebra& g) {
  json j;
  j["name"] = g.name();
  j["dim"] = g.dim();
  j["weights"] = g.weights();
  j["brackets"] = json::array();
  for (const auto& b : g.upper_brackets())
    j["brackets"].push_back({{"i", b.i + 1}, {"j", b.j + 1}, {"k", b.k + 1}, {"c", b.c}});
  return j.dump(2);
}

std::vector<std::string> bundled_group_names() {
  return {"R", "R2", "R2_aniso", "H1", "engel"};
}

GradedAlgebra resolve_algebra(const std::string& name_or_path) {
  if (std::filesystem::exists(name_or_path)) return load_algebra(name_or_path);
  std::string file = std::string(HOGROUP_GROUPS_DIR) + "/" + name_or_path + ".json";
  if (std::filesystem::exists(file)) return load_algebra(file);
  if (name_or_path == "R") return GradedAlgebra::euclidean(1);
  if (name_or_path == "R2") return GradedAlgebra::euclidean(2);
  if (name_or_path == "R2_aniso") return GradedAlgebra::anisotropic({1, 2});
  if (name_or_path == "H1") return GradedAlgebra::heisenberg();
  if (name_or_path == "engel") return GradedAlgebra::engel();
  throw Error("group", "unknown_group", name_or_path);
}

}  // namespace hogroup
