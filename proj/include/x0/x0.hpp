#pragma once

#include "bivariate.hpp"
#include "cuspdiv.hpp"
#include "errors.hpp"
#include "forms.hpp"
#include "invariants.hpp"
#include "minpoly.hpp"
#include "modular.hpp"
#include "ntarith.hpp"
#include "qseries.hpp"
