#pragma once

// Everything except the JSON layer (cartan/io.hpp), which needs nlohmann/json.
#include "cartan/algebra.hpp"
#include "cartan/castles.hpp"
#include "cartan/catalog.hpp"
#include "cartan/comparison.hpp"
#include "cartan/dynsys.hpp"
#include "cartan/errors.hpp"
#include "cartan/normalizers.hpp"
#include "cartan/rad_scalar.hpp"
#include "cartan/representation.hpp"
#include "cartan/semigroup.hpp"
#include "cartan/witness.hpp"
