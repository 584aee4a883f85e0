#pragma once

#include "bcox/errors.hpp"
#include "bcox/ring.hpp"
#include "bcox/braid.hpp"
#include "bcox/algebra.hpp"
#include "bcox/markov.hpp"
#include "bcox/tlb.hpp"
#include "bcox/bratteli.hpp"
#include "bcox/baxter.hpp"
#include "bcox/links.hpp"
#include "bcox/potts.hpp"
