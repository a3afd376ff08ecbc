#pragma once

#include "hardycover/errors.hpp"
#include "hardycover/word.hpp"
#include "hardycover/presentation.hpp"
#include "hardycover/surface.hpp"
#include "hardycover/covering.hpp"
#include "hardycover/linalg.hpp"
#include "hardycover/representation.hpp"
#include "hardycover/induction.hpp"
#include "hardycover/hardy.hpp"
#include "hardycover/json_io.hpp"
#include "hardycover/pipeline.hpp"
