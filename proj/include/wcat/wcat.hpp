#pragma once

#include "wcat/computad.hpp"
#include "wcat/errors.hpp"
#include "wcat/factor.hpp"
#include "wcat/frontend.hpp"
#include "wcat/glob.hpp"
#include "wcat/opalg.hpp"
#include "wcat/plex.hpp"
#include "wcat/tree.hpp"
