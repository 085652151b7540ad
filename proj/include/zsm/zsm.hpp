#pragma once

#include "zsm/asymptotics.hpp"
#include "zsm/distill.hpp"
#include "zsm/entanglement.hpp"
#include "zsm/multiplicity.hpp"
#include "zsm/oracle.hpp"
#include "zsm/serialize.hpp"
#include "zsm/types.hpp"
#include "zsm/young.hpp"
