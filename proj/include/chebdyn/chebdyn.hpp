#ifndef CHEBDYN_CHEBDYN_HPP
#define CHEBDYN_CHEBDYN_HPP

#include <chebdyn/arith.hpp>
#include <chebdyn/cheb.hpp>
#include <chebdyn/factor.hpp>
#include <chebdyn/ffield.hpp>
#include <chebdyn/figures.hpp>
#include <chebdyn/graph.hpp>
#include <chebdyn/io.hpp>
#include <chebdyn/poly.hpp>
#include <chebdyn/predict.hpp>
#include <chebdyn/summary.hpp>
#include <chebdyn/verify.hpp>

#endif  // CHEBDYN_CHEBDYN_HPP
