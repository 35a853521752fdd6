#include "trilasso/solution.hpp"

namespace trilasso {

std::string to_string(Method method) { return method == Method::admm ? "admm" : "dual"; }

Method parse_method(const std::string& name) {
  if (name == "admm") return Method::admm;
  if (name == "dual") return Method::dual;
  throw Error("unknown method '" + name + "' (expected admm or dual)");
}

}  // namespace trilasso
