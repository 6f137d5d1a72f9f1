#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oblab/blowup.hpp"
#include "oblab/grid.hpp"
#include "oblab/weiss.hpp"

namespace oblab {

std::string format_double(double x);  // shortest form that round-trips, %.17g

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& body);
void ensure_directory(const std::string& path);

// First line holds m and L; then m rows of m values, y increasing row by row.
void write_field_csv(const std::string& path, const ScalarField& u);
ScalarField read_field_csv(const std::string& path);

void write_mask_csv(const std::string& path, const GridSpec& g,
                    const std::vector<uint8_t>& mask);

void write_profile_csv(const std::string& path, const MonotoneProfile& p);
void write_blowup_csv(const std::string& path, const BlowupReport& rep);

std::string render_profile_svg(const MonotoneProfile& p);

}  // namespace oblab
