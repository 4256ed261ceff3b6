#pragma once

#include "maxlin/core.hpp"
#include "maxlin/estimation.hpp"
#include "maxlin/graph.hpp"
#include "maxlin/model.hpp"
#include "maxlin/separation.hpp"
#include "maxlin/tropical.hpp"
