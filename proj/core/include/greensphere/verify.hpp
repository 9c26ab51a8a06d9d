#pragma once

#include "greensphere/query.hpp"

namespace greensphere {

// E2 page of the first descent: modlin computation vs closed form, all
// |s|,|c| <= window, 0 <= n <= nmax.
Report verify_e2_window(const KORing& ko, int window, int nmax);

// d3 is a differential and the E4 page is concentrated on filtrations <= 2,
// so every later differential has source or target zero.
Report verify_d3_window(const KORing& ko, int window, int filt_max);

// Classical cross-checks: |KO^0(P_1^n)| = 2^{gamma(n)}, divisibility of
// 2^{gamma(n)} rho eta0 by rho^{n+1}, Picard lookup vs d3 survival.
Report verify_classical(const Engine& engine, int gamma_max, int div_max, int pic_max);

// Relation-table closure: every word of length <= 3 in table3 generators with
// parameters in [-range, range] normalizes, association orders agree.
Report verify_closure(const GreenRing& green, int range);

// Instances of the individual product lemmas feeding table2.
Report verify_product_lemmas(const GreenRing& green, int range);

// Restriction is a ring map on generator pairs and reproduces the classical
// mu^3 hidden extension.
Report verify_restriction_unit(const GreenRing& green, int range);

}  // namespace greensphere
