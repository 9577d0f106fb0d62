#pragma once

#include <dunklkit/field.hpp>
#include <dunklkit/poly.hpp>
#include <dunklkit/linalg.hpp>
#include <dunklkit/root_system.hpp>
#include <dunklkit/dunkl_ops.hpp>
#include <dunklkit/intertwiner.hpp>
#include <dunklkit/special.hpp>
#include <dunklkit/kernels.hpp>
#include <dunklkit/quadrature.hpp>
#include <dunklkit/transform.hpp>
#include <dunklkit/motion_group.hpp>
#include <dunklkit/parallel.hpp>
#include <dunklkit/verify.hpp>
