#pragma once

/// Convenience umbrella: the whole library.

#include "specgraph/cli.hpp"
#include "specgraph/cuts.hpp"
#include "specgraph/dft.hpp"
#include "specgraph/embedding.hpp"
#include "specgraph/errors.hpp"
#include "specgraph/graph.hpp"
#include "specgraph/io.hpp"
#include "specgraph/polynomial.hpp"
#include "specgraph/properties.hpp"
#include "specgraph/sampling.hpp"
#include "specgraph/spectral.hpp"
