#ifndef AITLAB_VERIFY_HPP
#define AITLAB_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "aitlab/complexity.hpp"
#include "aitlab/dispatch.hpp"

namespace aitlab {

struct ConstantCheck {
  std::string name;
  std::uint64_t checks = 0;
  bool pass = false;
  std::string detail;  // first failure, empty when pass
};

// Audits every dispatch behavior against its constant-overhead claim at
// one horizon: the self rule, the condition drop, each registered
// transform slot, the pair builder's length budget, and agreement of the
// embedded evaluator with the plain interpreter on seeded random triples.
// Transported witnesses are re-evaluated exactly; length claims are
// checked against full sweeps for every condition the battery touches.
std::vector<ConstantCheck> verify_dispatch_constants(const DispatchMachine& u,
                                                     const Horizon& h,
                                                     std::uint64_t seed = 7);

}  // namespace aitlab

#endif  // AITLAB_VERIFY_HPP
