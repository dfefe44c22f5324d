#ifndef QMLEN_QMLEN_HPP
#define QMLEN_QMLEN_HPP

#include "any_group.hpp"
#include "bounds.hpp"
#include "dedekind.hpp"
#include "errors.hpp"
#include "free_group.hpp"
#include "group.hpp"
#include "length.hpp"
#include "matrix.hpp"
#include "permutation.hpp"
#include "psl_normal_form.hpp"
#include "quasimorphism.hpp"
#include "rational.hpp"
#include "serialize.hpp"
#include "witness.hpp"

#endif // QMLEN_QMLEN_HPP
