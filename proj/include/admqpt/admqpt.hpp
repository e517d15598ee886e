#pragma once

#include "admqpt/eigensolver.hpp"
#include "admqpt/error.hpp"
#include "admqpt/markers.hpp"
#include "admqpt/meanfield.hpp"
#include "admqpt/model.hpp"
#include "admqpt/sweep.hpp"
#include "admqpt/version.hpp"
