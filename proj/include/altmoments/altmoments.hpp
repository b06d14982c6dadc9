#pragma once

//! Umbrella header for the whole library.

#include "altmoments/composition.hpp"
#include "altmoments/compstruct.hpp"
#include "altmoments/errors.hpp"
#include "altmoments/gof.hpp"
#include "altmoments/io.hpp"
#include "altmoments/kconvex.hpp"
#include "altmoments/measure.hpp"
#include "altmoments/momentrep.hpp"
#include "altmoments/rational.hpp"
#include "altmoments/seqcalc.hpp"
#include "altmoments/sequence.hpp"
#include "altmoments/subord.hpp"
