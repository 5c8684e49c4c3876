#pragma once

#include "boundary.hpp"
#include "construction.hpp"
#include "errors.hpp"
#include "extended_real.hpp"
#include "foliation.hpp"
#include "iet.hpp"
#include "json_io.hpp"
#include "optimise.hpp"
#include "origami.hpp"
#include "rectangulation.hpp"
#include "scalar.hpp"
#include "straighten.hpp"
#include "torus.hpp"
