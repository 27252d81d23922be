#pragma once

#include "mntkit/integer.hpp"
#include "mntkit/intpoly.hpp"
#include "mntkit/families.hpp"
#include "mntkit/counting.hpp"
#include "mntkit/table2.hpp"
#include "mntkit/primality.hpp"
#include "mntkit/pell.hpp"
#include "mntkit/search.hpp"
#include "mntkit/stats.hpp"
#include "mntkit/serialize.hpp"
