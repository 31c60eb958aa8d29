#pragma once

#include "trideal/char_ring.hpp"
#include "trideal/class_functions.hpp"
#include "trideal/cyclotomic.hpp"
#include "trideal/decomposition.hpp"
#include "trideal/descriptor.hpp"
#include "trideal/groups.hpp"
#include "trideal/integers.hpp"
#include "trideal/lattice.hpp"
#include "trideal/report.hpp"
#include "trideal/smith.hpp"
#include "trideal/transfer_ideal.hpp"
