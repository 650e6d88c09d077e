#pragma once

#include "evpos/command.hpp"
#include "evpos/document.hpp"
#include "evpos/elicit.hpp"
#include "evpos/error.hpp"
#include "evpos/evidence.hpp"
#include "evpos/frame.hpp"
#include "evpos/fuzzy.hpp"
#include "evpos/possibility.hpp"
