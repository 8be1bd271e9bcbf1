#pragma once

#include "numeric.hpp"
#include "poly.hpp"
#include "parse.hpp"
#include "zmod.hpp"
#include "bounds.hpp"
#include "dynamics.hpp"
#include "certificate.hpp"
#include "search.hpp"
#include "serialize.hpp"
#include "cli.hpp"
