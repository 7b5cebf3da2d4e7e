#pragma once

#include "tambara/error.hpp"
#include "tambara/poly.hpp"
#include "tambara/field.hpp"
#include "tambara/automorphism.hpp"
#include "tambara/subfield.hpp"
#include "tambara/gring.hpp"
#include "tambara/json.hpp"
#include "tambara/spec.hpp"
#include "tambara/validate.hpp"
#include "tambara/constructors.hpp"
#include "tambara/analysis.hpp"
#include "tambara/census.hpp"
