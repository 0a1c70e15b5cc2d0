#pragma once

#include "toda/special_functions.hpp"
#include "toda/exact.hpp"
#include "toda/report.hpp"
#include "toda/weyl_algebra.hpp"
#include "toda/separation.hpp"
#include "toda/gz_representation.hpp"
#include "toda/harish_chandra.hpp"
#include "toda/mellin_barnes.hpp"
#include "toda/toda_oracle.hpp"
#include "toda/cli.hpp"
