#pragma once

// Umbrella header for the whole engine.

#include "s2c/automation.hpp"
#include "s2c/bpmn.hpp"
#include "s2c/catalog.hpp"
#include "s2c/catalog_io.hpp"
#include "s2c/errors.hpp"
#include "s2c/graph.hpp"
#include "s2c/pipeline.hpp"
#include "s2c/report.hpp"
#include "s2c/util.hpp"
#include "s2c/xml.hpp"
