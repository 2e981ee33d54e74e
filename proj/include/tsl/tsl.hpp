#ifndef TSL_TSL_HPP
#define TSL_TSL_HPP

#include "tsl/duality.hpp"
#include "tsl/errors.hpp"
#include "tsl/groups_growth.hpp"
#include "tsl/matrix.hpp"
#include "tsl/opposite_algebra.hpp"
#include "tsl/opposite_space.hpp"
#include "tsl/pole_analysis.hpp"
#include "tsl/poly.hpp"
#include "tsl/rational_function.hpp"
#include "tsl/rational_operators.hpp"
#include "tsl/rational_subsets.hpp"
#include "tsl/real_cyclotomic.hpp"
#include "tsl/scalar.hpp"
#include "tsl/sequence.hpp"

#endif  // TSL_TSL_HPP
