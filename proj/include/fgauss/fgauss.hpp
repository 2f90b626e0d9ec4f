#pragma once

#include "fgauss/error.hpp"
#include "fgauss/lattice.hpp"
#include "fgauss/theta.hpp"
#include "fgauss/hilbert.hpp"
#include "fgauss/spectral.hpp"
#include "fgauss/rational.hpp"
#include "fgauss/dynamics.hpp"
#include "fgauss/wigner.hpp"
