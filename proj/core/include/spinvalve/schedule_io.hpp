#pragma once

#include <string>

#include "spinvalve/valve.hpp"

namespace spinvalve {

// Plain-text schedule format, one step per line after the header:
//
//   valve-schedule v1 N=<sites> strategy=<name>
//   <k> <t_k> <re a_k> <im a_k> <f_prev> <f_k>
//
// Scalars are written with 17 significant digits, so write -> read -> write
// reproduces the file byte for byte.
std::string schedule_to_string(const ValveSchedule& schedule);
ValveSchedule schedule_from_string(const std::string& text);

void write_schedule_file(const std::string& path, const ValveSchedule& schedule);
ValveSchedule read_schedule_file(const std::string& path);

}  // namespace spinvalve
