#pragma once

#include "s1c/bumps.hpp"
#include "s1c/closed_forms.hpp"
#include "s1c/config.hpp"
#include "s1c/dual.hpp"
#include "s1c/elliptic.hpp"
#include "s1c/error.hpp"
#include "s1c/field.hpp"
#include "s1c/geometry.hpp"
#include "s1c/grid.hpp"
#include "s1c/io.hpp"
#include "s1c/lichnerowicz.hpp"
#include "s1c/momentum.hpp"
#include "s1c/picard.hpp"
#include "s1c/staggered.hpp"
#include "s1c/tridiagonal.hpp"
#include "s1c/verify.hpp"
