#include <cstdio>

#include "property_suites.hpp"

int main() {
    int bad = 0;
    for (const auto& r : testsupport::run_property_suites()) {
        const bool ok = r.failures == 0 && r.assertions >= 100;
        std::printf("%s: %s (%ld assertions, %ld failures)\n", r.name.c_str(), ok ? "PASS" : "FAIL", r.assertions, r.failures);
        if (!r.first_failure.empty()) std::printf("  first failure: %s\n", r.first_failure.c_str());
        bad += !ok;
    }
    return bad == 0 ? 0 : 1;
}
