#pragma once

#include "sqdist/closed_forms.hpp"
#include "sqdist/errors.hpp"
#include "sqdist/io.hpp"
#include "sqdist/linalg.hpp"
#include "sqdist/matrix.hpp"
#include "sqdist/rational.hpp"
#include "sqdist/tree.hpp"
#include "sqdist/tree_matrices.hpp"
#include "sqdist/verify.hpp"
