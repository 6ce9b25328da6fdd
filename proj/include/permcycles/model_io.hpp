#pragma once

#include <string>

#include "permcycles/weights.hpp"

namespace permcycles {

// Model files are JSON objects:
//   {"theta": RULE, "kappa": RULE, "rho": 1.0, "profile": {...}}
// RULE is one of
//   {"kind": "constant",  "c": x}
//   {"kind": "power",     "c": x, "exponent": p}
//   {"kind": "polylog",   "kstar": x, "s": p}
//   {"kind": "perturbed", "c": x, "s": p, "eps": e}
//   {"kind": "table",     "values": [a_1, a_2, ...]}
// "kstar" and "c" are interchangeable, as are "s", "gamma0" and "exponent".
// "rho" defaults to 1 and "profile" may set any of radius, theta_star,
// theta_regular_at_R, sing_index, sing_coeff, gk_derivs_at_R, gt_value_at_R.
WeightModel parse_model(const std::string& text);
WeightModel load_model(const std::string& path);
std::string dump_model(const WeightModel& model);

}  // namespace permcycles
