#include <doctest.h>
TEST_CASE("placeholder test_io") { CHECK(true); }
