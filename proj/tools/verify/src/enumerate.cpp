#include "imd/verify/enumerate.hpp"

#include <cmath>
#include <functional>

#include "imd/error.hpp"

namespace imd::verify {
namespace {

constexpr int kMaxVertices = 12;

// Calls visit(k) once per matching. The lowest free vertex is either left
// as a monomer or paired with each higher free vertex in turn.
void walk(unsigned free_mask, int k, const std::function<void(int)>& visit) {
  if (free_mask == 0) {
    visit(k);
    return;
  }
  const int v = __builtin_ctz(free_mask);
  const unsigned rest = free_mask & ~(1u << v);
  walk(rest, k, visit);
  for (unsigned others = rest; others != 0; others &= others - 1) {
    const int w = __builtin_ctz(others);
    walk(rest & ~(1u << w), k + 1, visit);
  }
}

void check_size(int N) {
  if (N < 1 || N > kMaxVertices) throw DomainError("enumerate: N must lie in 1..12");
}

}  // namespace

std::vector<std::uint64_t> enumerate_matchings(int N) {
  check_size(N);
  std::vector<std::uint64_t> counts(N / 2 + 1, 0);
  walk((1u << N) - 1, 0, [&](int k) { ++counts[k]; });
  return counts;
}

double brute_force_log_partition(int N, const ModelParams& params) {
  check_size(N);
  const double h = params.h();
  const double J = params.J();
  // Energies are bounded by N(|h| + 2J), so a fixed shift keeps the sum in range.
  const double shift = N * (std::abs(h) + 2.0 * J);
  double Z = 0.0;
  walk((1u << N) - 1, 0, [&](int k) {
    const double m = static_cast<double>(N - 2 * k) / N;
    const double minus_H = N * ((h - J) * m + J * m * m);
    Z += std::exp(minus_H - shift - k * std::log(static_cast<double>(N)));
  });
  return std::log(Z) + shift;
}

}  // namespace imd::verify
