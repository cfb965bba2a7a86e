#pragma once

#include "addbasis/bounds.hpp"
#include "addbasis/constructions.hpp"
#include "addbasis/element_set.hpp"
#include "addbasis/error.hpp"
#include "addbasis/instances.hpp"
#include "addbasis/matrix.hpp"
#include "addbasis/rational.hpp"
#include "addbasis/solver.hpp"
#include "addbasis/sumset.hpp"
#include "addbasis/vector_model.hpp"
#include "addbasis/version.hpp"
