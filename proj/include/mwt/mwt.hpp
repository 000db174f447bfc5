#pragma once

#include "mwt/distributions.hpp"
#include "mwt/errors.hpp"
#include "mwt/expansion.hpp"
#include "mwt/growth.hpp"
#include "mwt/hermite.hpp"
#include "mwt/numdiff.hpp"
#include "mwt/quadrature.hpp"
#include "mwt/transform.hpp"
#include "mwt/verify.hpp"
#include "mwt/wavelets.hpp"
