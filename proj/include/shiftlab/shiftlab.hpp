#pragma once

/** \file shiftlab.hpp
 *  \brief Everything in one include.
 */

#include "cayley.hpp"
#include "config.hpp"
#include "dilation.hpp"
#include "divided_difference.hpp"
#include "ensemble.hpp"
#include "errors.hpp"
#include "laurent.hpp"
#include "linops.hpp"
#include "matrix_io.hpp"
#include "moi.hpp"
#include "paths.hpp"
#include "quadrature.hpp"
#include "ssf.hpp"
#include "ssf_io.hpp"
#include "verify.hpp"
