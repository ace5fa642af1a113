#ifndef ABTHEME_BATTERY_HPP
#define ABTHEME_BATTERY_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace abtheme
{

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct BatteryOptions {
    std::size_t order = 24;
    std::size_t margin = 6;
    bool parallel = true;
};

/// DSL documents used for the parser round trip.
std::vector<std::string> parser_corpus();

CriterionResult run_criterion(int id, const BatteryOptions &opt);
std::vector<CriterionResult> run_battery(const BatteryOptions &opt);
/// "[PASS] 5 rank-2 parameter: ..." on one line.
std::string result_line(const CriterionResult &r);

} // namespace abtheme

#endif
