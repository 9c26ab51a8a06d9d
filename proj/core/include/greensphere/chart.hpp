#pragma once

#include "greensphere/query.hpp"

#include <string>

namespace greensphere {

struct ChartSpec {
    std::string ring = "sphere";  // ku | e2 | ko | sphere | mackey
    long long smin = -4, smax = 8;
    long long cmin = -4, cmax = 8;
    std::string format = "text";  // text | svg | json
};

std::string chart_text(const Engine& engine, const ChartSpec& spec);
std::string chart_svg(const Engine& engine, const ChartSpec& spec);
std::string chart_json(const Engine& engine, const ChartSpec& spec);
std::string render_chart(const Engine& engine, const ChartSpec& spec);

}  // namespace greensphere
