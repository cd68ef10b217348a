#ifndef QDOPS_QDOPS_HPP
#define QDOPS_QDOPS_HPP

#include "qdops/error.hpp"
#include "qdops/scalar.hpp"
#include "qdops/ring.hpp"
#include "qdops/symbol.hpp"
#include "qdops/operator.hpp"
#include "qdops/truncated.hpp"
#include "qdops/expr.hpp"
#include "qdops/parser.hpp"
#include "qdops/shape.hpp"
#include "qdops/integrate.hpp"
#include "qdops/simplicity.hpp"
#include "qdops/report.hpp"
#include "qdops/uq.hpp"
#include "qdops/random.hpp"
#include "qdops/suites.hpp"

#endif  // QDOPS_QDOPS_HPP
