#pragma once

#include "gbeta/errors.hpp"
#include "gbeta/poly.hpp"
#include "gbeta/algebraic.hpp"
#include "gbeta/bigfloat.hpp"
#include "gbeta/betamap.hpp"
#include "gbeta/roots.hpp"
#include "gbeta/spectra.hpp"
#include "gbeta/construct.hpp"
#include "gbeta/parallel.hpp"
#include "gbeta/random.hpp"
#include "gbeta/sets.hpp"
#include "gbeta/chebyshev.hpp"
#include "gbeta/io.hpp"
#include "gbeta/verify.hpp"
