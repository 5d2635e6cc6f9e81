#ifndef WDCOLOR_HPP
#define WDCOLOR_HPP

#include "wdcolor/bounds.hpp"
#include "wdcolor/colorers.hpp"
#include "wdcolor/decomposition.hpp"
#include "wdcolor/engine.hpp"
#include "wdcolor/errors.hpp"
#include "wdcolor/generators.hpp"
#include "wdcolor/graph.hpp"
#include "wdcolor/io.hpp"
#include "wdcolor/legitimacy.hpp"
#include "wdcolor/oracles.hpp"

#endif
