#include <doctest.h>

#include "bihyp/verify.hpp"

TEST_CASE("placeholder_picture") { CHECK(true); }
