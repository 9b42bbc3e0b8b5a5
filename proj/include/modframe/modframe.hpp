#pragma once

#include "modframe/error.hpp"
#include "modframe/scalar.hpp"
#include "modframe/int_matrix.hpp"
#include "modframe/laurent.hpp"
#include "modframe/laurent_matrix.hpp"
#include "modframe/smith.hpp"
#include "modframe/torus.hpp"
#include "modframe/finseq.hpp"
#include "modframe/piecewise.hpp"
#include "modframe/shift_space.hpp"
#include "modframe/bracket.hpp"
#include "modframe/hilbert.hpp"
#include "modframe/mra.hpp"
#include "modframe/symmetry.hpp"
#include "modframe/lifting.hpp"
