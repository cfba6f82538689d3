#include <fovgmres/csv.hpp>

#include <cstdio>

namespace fovgmres {

std::string fmt17(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

}  // namespace fovgmres
