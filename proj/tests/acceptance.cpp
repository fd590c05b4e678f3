// Acceptance suite: runs every numbered criterion at full level and prints one
// pass/fail line per row. Exit code = number of failed gate rows.

#include "decoh/verify.hpp"

#include <cstdio>

int main() {
    using namespace decoh::verify;
    const Report rep = run_all(Level::full);
    std::fputs(render(rep).c_str(), stdout);

    int failed = 0;
    for (const Row& r : rep.rows)
        if (!r.informational && !r.pass) ++failed;
    std::printf("\n%zu rows, %d gate failure(s)\n", rep.rows.size(), failed);
    return failed;
}
