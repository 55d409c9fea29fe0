#pragma once

#include "cycloset/arith.hpp"
#include "cycloset/cosets.hpp"
#include "cycloset/enumerate.hpp"
#include "cycloset/error.hpp"
#include "cycloset/io.hpp"
#include "cycloset/system.hpp"
#include "cycloset/tree.hpp"
