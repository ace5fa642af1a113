#include <iostream>

#include "abtheme/battery.hpp"

int main()
{
    const auto results = abtheme::run_battery({});
    int failed = 0;
    for (const auto &r : results) {
        std::cout << abtheme::result_line(r) << "\n";
        failed += !r.pass;
    }
    std::cout << (results.size() - failed) << "/" << results.size() << " criteria pass\n";
    return failed == 0 ? 0 : 1;
}
