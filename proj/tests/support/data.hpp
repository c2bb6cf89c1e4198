#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "secset/instance.hpp"

namespace testdata {

inline std::string path(const std::string& name) { return std::string(SECSET_TEST_DATA) + "/" + name; }

inline std::string read(const std::string& name) {
  std::ifstream in(path(name));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Vertices a..e are ids 0..4.
inline secset::Instance five_vertex() { return secset::parse_instance(read("five_vertex.ss")); }

// a..g are ids 0..6; f is the anonymous forbidden vertex, g the necessary neighbour of c.
inline secset::Instance decorated() { return secset::parse_instance(read("decorated.ss")); }

}  // namespace testdata
