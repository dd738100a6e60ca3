#pragma once

// Umbrella header for the hmfd library.

#include "hmfd/arith.hpp"
#include "hmfd/number_field.hpp"
#include "hmfd/ideal.hpp"
#include "hmfd/class_group.hpp"
#include "hmfd/finite_field.hpp"
#include "hmfd/character.hpp"
#include "hmfd/linalg.hpp"
#include "hmfd/qexp.hpp"
#include "hmfd/operators.hpp"
#include "hmfd/eigenforms.hpp"
#include "hmfd/doubling.hpp"
#include "hmfd/experiment.hpp"
#include "hmfd/random_forms.hpp"
#include "hmfd/serialize.hpp"
