#pragma once

#include "qgal/freealg.hpp"
#include "qgal/hopf.hpp"
#include "qgal/induction.hpp"
#include "qgal/lattice.hpp"
#include "qgal/opcalc.hpp"
#include "qgal/parse.hpp"
#include "qgal/rational.hpp"
#include "qgal/report.hpp"
#include "qgal/scalar.hpp"
