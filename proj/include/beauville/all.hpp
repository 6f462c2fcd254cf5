#pragma once

#include "beauville/any_group.hpp"
#include "beauville/arith.hpp"
#include "beauville/cayley.hpp"
#include "beauville/element.hpp"
#include "beauville/error.hpp"
#include "beauville/frattini.hpp"
#include "beauville/geometry.hpp"
#include "beauville/group.hpp"
#include "beauville/io.hpp"
#include "beauville/lifting.hpp"
#include "beauville/matrix_group.hpp"
#include "beauville/metacyclic.hpp"
#include "beauville/search.hpp"
#include "beauville/structure.hpp"
#include "beauville/uniform.hpp"
