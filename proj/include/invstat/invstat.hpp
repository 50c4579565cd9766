#ifndef INVSTAT_INVSTAT_HPP
#define INVSTAT_INVSTAT_HPP

// Umbrella header for the whole toolkit.

#include "invstat/csv_io.hpp"
#include "invstat/dependence.hpp"
#include "invstat/errors.hpp"
#include "invstat/first_passage.hpp"
#include "invstat/gen_gamma.hpp"
#include "invstat/index.hpp"
#include "invstat/nelder_mead.hpp"
#include "invstat/rng.hpp"
#include "invstat/series.hpp"
#include "invstat/synthetic.hpp"
#include "invstat/version.hpp"

#endif
