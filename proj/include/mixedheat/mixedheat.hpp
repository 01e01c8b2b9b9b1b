#pragma once

#include "mixedheat/fft.hpp"
#include "mixedheat/fujita.hpp"
#include "mixedheat/grid.hpp"
#include "mixedheat/io.hpp"
#include "mixedheat/kernels.hpp"
#include "mixedheat/params.hpp"
#include "mixedheat/solver.hpp"
#include "mixedheat/stable.hpp"
#include "mixedheat/symbols.hpp"
