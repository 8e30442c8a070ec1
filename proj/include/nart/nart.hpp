#pragma once

// Umbrella header for the n-Auslander-Reiten toolkit.

#include "nart/algebra.hpp"
#include "nart/approx.hpp"
#include "nart/errors.hpp"
#include "nart/fp.hpp"
#include "nart/fpmat.hpp"
#include "nart/fppoly.hpp"
#include "nart/functors.hpp"
#include "nart/groth.hpp"
#include "nart/hom.hpp"
#include "nart/homology.hpp"
#include "nart/io.hpp"
#include "nart/module.hpp"
#include "nart/nexact.hpp"
#include "nart/quiver.hpp"
#include "nart/report.hpp"
#include "nart/zlat.hpp"
