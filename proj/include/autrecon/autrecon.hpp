#pragma once

#include "autrecon/almost_perm.hpp"
#include "autrecon/balg.hpp"
#include "autrecon/error.hpp"
#include "autrecon/formulas.hpp"
#include "autrecon/group.hpp"
#include "autrecon/katetov.hpp"
#include "autrecon/perm.hpp"
#include "autrecon/reconstruct.hpp"
#include "autrecon/sweeps.hpp"
#include "autrecon/witnesses.hpp"
