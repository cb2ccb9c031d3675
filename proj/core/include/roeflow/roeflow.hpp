#pragma once

#include "roeflow/averaging.hpp"
#include "roeflow/errors.hpp"
#include "roeflow/expander.hpp"
#include "roeflow/flows.hpp"
#include "roeflow/generators.hpp"
#include "roeflow/locality.hpp"
#include "roeflow/operator.hpp"
#include "roeflow/rigidity.hpp"
#include "roeflow/rng.hpp"
#include "roeflow/space.hpp"
#include "roeflow/spectral.hpp"
#include "roeflow/translations.hpp"
