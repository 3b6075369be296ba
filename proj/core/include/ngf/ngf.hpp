#pragma once

#include "ngf/attribute.hpp"
#include "ngf/calibration.hpp"
#include "ngf/derive.hpp"
#include "ngf/edge_templates.hpp"
#include "ngf/entity_id.hpp"
#include "ngf/equality.hpp"
#include "ngf/error.hpp"
#include "ngf/flow.hpp"
#include "ngf/hypergram.hpp"
#include "ngf/metrics.hpp"
#include "ngf/persist.hpp"
#include "ngf/schema.hpp"
#include "ngf/store.hpp"
#include "ngf/superposition.hpp"
