#pragma once

#include "unitreg/axioms.hpp"
#include "unitreg/corner.hpp"
#include "unitreg/element.hpp"
#include "unitreg/regularity.hpp"
#include "unitreg/ring.hpp"
#include "unitreg/shift.hpp"
#include "unitreg/spec_parser.hpp"
#include "unitreg/theorem.hpp"
