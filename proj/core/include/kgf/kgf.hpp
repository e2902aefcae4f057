#pragma once

#include "kgf/ek_transmute.hpp"
#include "kgf/errors.hpp"
#include "kgf/fd.hpp"
#include "kgf/fields.hpp"
#include "kgf/kgf_solver.hpp"
#include "kgf/quadrature.hpp"
#include "kgf/real.hpp"
#include "kgf/special_fns.hpp"
#include "kgf/verify.hpp"
#include "kgf/wave_core.hpp"
