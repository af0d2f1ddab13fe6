#pragma once

// Umbrella header.
#include "moc/combinatorics.hpp"
#include "moc/errors.hpp"
#include "moc/identity.hpp"
#include "moc/lemma.hpp"
#include "moc/nested_series.hpp"
#include "moc/poly.hpp"
#include "moc/rational.hpp"
#include "moc/report.hpp"
#include "moc/series.hpp"
