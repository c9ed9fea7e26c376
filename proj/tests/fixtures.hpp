#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "probkb/kb_text.hpp"

namespace probkb::testing {

inline KnowledgeBase load_fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURES_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture: " + name);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_kb(os.str());
}

}  // namespace probkb::testing
