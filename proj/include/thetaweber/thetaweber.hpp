#pragma once

#include "f2.hpp"
#include "fundamental.hpp"
#include "integer_symplectic.hpp"
#include "io.hpp"
#include "sampling.hpp"
#include "symplectic_f2.hpp"
#include "theta.hpp"
#include "weber.hpp"
