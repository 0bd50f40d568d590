#include <doctest.h>

#include "properties.hpp"

TEST_CASE("generated-case properties") {
  props::Options o;
  o.stub_adapter = LIMELIGHT_STUB_ADAPTER;
  for (const auto& p : props::all()) {
    SUBCASE(p.name) {
      const auto r = p.fn(o);
      INFO(r.name << ": " << r.failures << "/" << r.cases << " failed; first: " << r.first_failure);
      CHECK(r.ok());
    }
  }
}
