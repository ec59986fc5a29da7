#pragma once

#include "tropical_theta/rational.hpp"
#include "tropical_theta/graph.hpp"
#include "tropical_theta/metric_curve.hpp"
#include "tropical_theta/divisor.hpp"
#include "tropical_theta/theta.hpp"
#include "tropical_theta/moduli.hpp"
#include "tropical_theta/specialization.hpp"
#include "tropical_theta/io.hpp"
