#pragma once

#include "sciento/aggregate.hpp"
#include "sciento/collaboration.hpp"
#include "sciento/errors.hpp"
#include "sciento/fixture.hpp"
#include "sciento/growth.hpp"
#include "sciento/ingest.hpp"
#include "sciento/lotka.hpp"
#include "sciento/records.hpp"
#include "sciento/report.hpp"
#include "sciento/tables.hpp"
#include "sciento/variant.hpp"
