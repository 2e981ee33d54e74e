// Walks through Z/2 * Z/3: growth series, accumulation of the opposite series,
// sections and the comparison with the boundary poles.

#include <iostream>

#include "tsl/tsl.hpp"

int main() {
  using namespace tsl;
  PrecisionScope scope(256);

  const FreeProductSpec group{{2, 3}};
  const auto growth = growth_series(group);
  std::cout << "P(t) = " << growth.cumulative.to_string() << "\n";

  const CoefficientStream stream(SeriesSpec::free_product({2, 3}));
  std::cout << "gamma_0..9:";
  for (const auto& g : stream.prefix(9)) std::cout << ' ' << to_string(g);
  std::cout << "\n";

  const auto rep = detect_accumulation(stream);
  std::cout << "h_P = " << rep.h_P << ", initials";
  for (const auto& c : rep.initials) std::cout << ' ' << to_string(*c.reconstructed);
  std::cout << ", A = " << to_string(*rep.A_exact) << "\n";

  const auto a = *rep.exact_real_initials();
  const auto pair = denominator_pair(a);
  std::cout << "Delta^op(s) = " << pair.delta_op.to_string("s") << "\n";

  for (const auto& s : all_sections(growth.cumulative, 2))
    std::cout << "T^[" << s.e << "]P = " << s.result.to_string() << "\n";

  const auto dual = verify_duality(stream);
  std::cout << "Delta^top(t) = " << dual.pole->polar.delta_top_exact->to_string("t") << "\n";
  std::cout << "transition matrix (rows e, columns x = 1/sqrt2, -1/sqrt2):\n";
  for (const auto& row : dual.pole->matrix.entries) {
    for (const auto& v : row) std::cout << "  " << to_string(v.re, 20);
    std::cout << "\n";
  }
  std::cout << "det = " << to_string(dual.pole_determinant->re, 20) << " (sqrt2/35 = " << to_string(sqrt(Real(2)) / 35, 20)
            << ")\n";
  std::cout << "verdict: " << dual.verdict << "\n";
  return dual.passed() ? 0 : 1;
}
