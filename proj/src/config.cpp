#include "k3/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "k3/errors.hpp"

namespace k3 {

namespace {

std::vector<std::vector<Rat>> parse_matrix(const nlohmann::json& j, size_t n,
                                           const std::string& key) {
  if (!j.is_array() || j.size() != n)
    throw ConfigError(key + " must be a " + std::to_string(n) + "x" + std::to_string(n) +
                      " matrix");
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != n)
      throw ConfigError(key + " must be a " + std::to_string(n) + "x" + std::to_string(n) +
                        " matrix");
    for (size_t k = 0; k < n; ++k) {
      const auto& cell = row[k];
      try {
        if (cell.is_number_integer()) {
          m[i][k] = Rat(static_cast<long long>(cell.get<long long>()));
        } else if (cell.is_string()) {
          m[i][k] = parse_rat(cell.get<std::string>());
        } else {
          throw std::invalid_argument("cell must be an integer or a \"p/q\" string");
        }
      } catch (const std::exception& e) {
        throw ConfigError(key + "[" + std::to_string(i) + "][" + std::to_string(k) +
                          "]: " + e.what());
      }
    }
  }
  return m;
}

}  // namespace

FileConfig parse_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad config json: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a json object");
  FileConfig cfg;
  for (const auto& [key, val] : j.items()) {
    if (key == "gram_h11") {
      cfg.gram = parse_matrix(val, kH11Size, "gram_h11");
    } else if (key == "seed") {
      if (!val.is_number_unsigned()) throw ConfigError("seed must be an unsigned integer");
      cfg.seed = val.get<std::uint64_t>();
    } else if (key == "phi_h2") {
      cfg.phi = parse_matrix(val, 22, "phi_h2");
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

FileConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

GramH11 alternate_gram() {
  GramH11 g(kH11Size, std::vector<Rat>(kH11Size, 0));
  g[0][0] = 2;
  g[0][1] = g[1][0] = 1;
  g[1][1] = 1;
  for (int i = 2; i < kH11Size; ++i) g[i][i] = -1;
  return g;
}

}  // namespace k3
