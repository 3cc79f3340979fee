#pragma once

#include "eigenid/core.hpp"
#include "eigenid/matrix.hpp"
#include "eigenid/io.hpp"
#include "eigenid/random.hpp"
#include "eigenid/eigen.hpp"
#include "eigenid/identity.hpp"
#include "eigenid/proof.hpp"
