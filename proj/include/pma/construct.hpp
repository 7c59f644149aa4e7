#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pma/rootdatum.hpp"

namespace pma {

// k+1 for odd k, k for even k: the exponent bump that turns a prime power
// into one with even exponent.
std::int64_t upsilon(std::int64_t k);

// Applies upsilon to every exponent of the prime factorization, so the
// result is the smallest perfect square divisible by k.  big_upsilon(1) = 1.
std::int64_t big_upsilon(std::int64_t k);

// True when no squared prime divides k.
bool squarefree(std::int64_t k);

// True when the constants are not all zero.  For the construction outputs
// below a nonzero spec certifies a genuinely nonassociative example; this
// is not a general associativity-up-to-twist decision.
bool genuine_flag(const CocycleSpec& spec);

// Output of standard_construction.  When every label order is squarefree
// no nonzero constants can exist and the construction refuses (refused,
// reason).  Otherwise datum/constants/genuine are filled in and m is the
// common base modulus.  one_param_m is a closed form sometimes quoted for
// one-parameter label families (big_upsilon of the vertex order, doubled
// when odd); it disagrees with the lcm computation on odd orders and is
// reported for comparison only, never asserted.
struct StandardConstruction {
  bool refused = false;
  std::string reason;
  std::int64_t m = 0;
  std::optional<std::int64_t> one_param_m;
  std::optional<RootDatum> datum;
  std::optional<CocycleSpec> constants;
  bool genuine = false;
};

// Realizes a diagram with given labels over Z_m^rank where m is the square
// root of the lcm of big_upsilon(order) over all labels: degrees are the
// generators (S = I) and x_ii, x_ij encode the labels against the lifted
// modulus m^2 (zero below the diagonal).  Throws invalid_argument on a
// zero vertex label and logic_error if the assembled datum fails its own
// verification.
StandardConstruction standard_construction(const GeneralizedDynkinDiagram& diagram);

// Connected components of the vertex set under c_ij != 0, each listed in
// ascending index order, components ordered by smallest member.  Validates
// Cartan shape: square, diagonal 2, off-diagonal <= 0, zeros symmetric.
std::vector<std::vector<std::size_t>> cartan_components(const IntMat& C);

struct CartanConstruction {
  RootDatum datum;
  std::vector<std::int64_t> d;                     // minimal positive symmetrizer
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::int64_t> orders;                // base modulus per component
  CocycleSpec constants;
  bool genuine = false;
};

// Builds the datum whose braiding is q_ii = zeta_{m_i^2}^{d_i} and
// q~_ij = q_ii^{c_ij} over base moduli chosen per component: x_ii = d_i,
// x_ij = d_i c_ij mod m_i^2 above the diagonal, zero below, S = T = I.
// component_orders gives one odd modulus > 2 per component (in component
// order); when empty each component takes the smallest admissible value
// chainwise: every modulus must divide the next, and a component with a
// triple edge needs a modulus prime to 3 (its label orders would otherwise
// collapse), so defaults are 3, or 5 for triple-edge components.  Throws
// invalid_argument on a malformed or non-symmetrizable matrix, an
// inadmissible modulus choice, or a vertex order whose moduli do not come
// out ascending.
CartanConstruction cartan_construction(const IntMat& C,
                                       const std::vector<std::int64_t>& component_orders = {});

}  // namespace pma
