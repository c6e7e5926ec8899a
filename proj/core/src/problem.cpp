#include "fbvp/problem.hpp"

#include <cmath>

#include "fbvp/errors.hpp"

namespace fbvp {

void ProblemSpec::validate() const {
  if (!f || !q || !u || !v || !gamma) throw DomainError("ProblemSpec: f, q, u, v and gamma are all required");
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("ProblemSpec: R must be positive");
}

}  // namespace fbvp
