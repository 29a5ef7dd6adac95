#pragma once

// Exact-symbolic and numeric workbench for the geometric quantization of
// constant holomorphic curvature models (the deformed oscillator family).

#include "kq/afrac.hpp"
#include "kq/diff_op.hpp"
#include "kq/fock.hpp"
#include "kq/fock_basis.hpp"
#include "kq/geometry.hpp"
#include "kq/hproj.hpp"
#include "kq/io.hpp"
#include "kq/model.hpp"
#include "kq/multiindex.hpp"
#include "kq/observables.hpp"
#include "kq/op_matrix.hpp"
#include "kq/poly.hpp"
#include "kq/quadrature.hpp"
#include "kq/rational.hpp"
#include "kq/report.hpp"
#include "kq/sampling.hpp"
#include "kq/section_op.hpp"
#include "kq/vector_field.hpp"
