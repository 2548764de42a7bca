#pragma once

#include "matchpoly/errors.hpp"
#include "matchpoly/rational.hpp"
#include "matchpoly/polynomial.hpp"
#include "matchpoly/roots.hpp"
#include "matchpoly/graph.hpp"
#include "matchpoly/enumerate.hpp"
#include "matchpoly/matching_poly.hpp"
#include "matchpoly/char_poly.hpp"
#include "matchpoly/path_tree.hpp"
#include "matchpoly/gallai_edmonds.hpp"
#include "matchpoly/demo.hpp"
#include "matchpoly/io.hpp"
