#pragma once

#include "ovalshell/brazier.hpp"
#include "ovalshell/core.hpp"
#include "ovalshell/errors.hpp"
#include "ovalshell/harmonics.hpp"
#include "ovalshell/oracle.hpp"
#include "ovalshell/ringload.hpp"
#include "ovalshell/scenario_file.hpp"
#include "ovalshell/scenarios.hpp"
