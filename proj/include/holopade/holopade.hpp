#pragma once

#include "holopade/bipoly.hpp"
#include "holopade/criterion.hpp"
#include "holopade/determinant.hpp"
#include "holopade/errors.hpp"
#include "holopade/families.hpp"
#include "holopade/gop.hpp"
#include "holopade/heights.hpp"
#include "holopade/holonomic.hpp"
#include "holopade/hyper_explicit.hpp"
#include "holopade/io_json.hpp"
#include "holopade/laurent.hpp"
#include "holopade/pade.hpp"
#include "holopade/poly.hpp"
#include "holopade/qlinalg.hpp"
#include "holopade/ratfunc.hpp"
#include "holopade/rational.hpp"
#include "holopade/real.hpp"
#include "holopade/weyl.hpp"
