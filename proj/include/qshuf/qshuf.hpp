#pragma once
// Umbrella header.

#include "qshuf/hopf.hpp"
#include "qshuf/io.hpp"
#include "qshuf/kac.hpp"
#include "qshuf/laurent.hpp"
#include "qshuf/linalg.hpp"
#include "qshuf/params.hpp"
#include "qshuf/pbw.hpp"
#include "qshuf/quiver.hpp"
#include "qshuf/ratfunc.hpp"
#include "qshuf/scalar.hpp"
#include "qshuf/shuffle.hpp"
#include "qshuf/slope.hpp"
#include "qshuf/tseries.hpp"
#include "qshuf/wheel.hpp"
#include "qshuf/zeta.hpp"
