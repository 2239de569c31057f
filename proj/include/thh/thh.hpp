#pragma once

#include "thh/error.hpp"
#include "thh/integer.hpp"
#include "thh/matrix.hpp"
#include "thh/galois_ring.hpp"
#include "thh/cdvr.hpp"
#include "thh/zpm.hpp"
#include "thh/howell.hpp"
#include "thh/quotient_ring.hpp"
#include "thh/fin_module.hpp"
#include "thh/chain_linalg.hpp"
#include "thh/dga.hpp"
#include "thh/closed_forms.hpp"
#include "thh/charts.hpp"
#include "thh/ring_config.hpp"
#include "thh/report.hpp"
#include "thh/verify.hpp"
