#pragma once

#include <string>

#include "pho/config.hpp"

namespace fixture {

inline const pho::EngineConfig& load(const std::string& name) {
  static std::map<std::string, pho::EngineConfig> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, pho::load_config(std::string(PHO_GRAMMAR_DIR) + "/" + name)).first;
  return it->second;
}

inline const pho::EngineConfig& turkish() { return load("turkish.pho"); }
inline const pho::EngineConfig& yoruba() { return load("yoruba.pho"); }
inline const pho::EngineConfig& stress() { return load("stress.pho"); }
inline const pho::EngineConfig& world() { return load("world.pho"); }
inline const pho::EngineConfig& paradigm10() { return load("paradigm10.pho"); }

inline pho::Word word(const pho::EngineConfig& cfg, const std::string& text) {
  return cfg.features.parse_word(text);
}

}  // namespace fixture
