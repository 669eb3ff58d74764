#include "rtdp/env.hpp"

namespace rtdp {

double discounted_return(std::span<const double> rewards, double gamma) {
  // Horner form, summed back to front.
  double g = 0.0;
  for (auto it = rewards.rbegin(); it != rewards.rend(); ++it) {
    g = *it + gamma * g;
  }
  return g;
}

}  // namespace rtdp
