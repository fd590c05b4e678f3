#pragma once

#include "decoh/types.hpp"

#include <filesystem>

// Trace and density-section serialization. CSV is UTF-8 with LF line endings;
// numbers carry 17 significant digits so doubles survive a round trip.

namespace decoh::io {

enum class Format { csv, json };

// One number -> shortest-17-significant-digit decimal text.
std::string format_double(double v);

// Trace serialization: CSV header "t,re_F,im_F,abs_F" or a JSON array of
// {"t":..,"re_F":..,"im_F":..,"abs_F":..} records under {"model":..,"trace":[..]}.
std::string trace_to_csv(const DecoherenceTrace& trace);
std::string trace_to_json(const DecoherenceTrace& trace);

// Parse back what trace_to_json produced (round-trip exactness contract).
DecoherenceTrace trace_from_json(const std::string& text);

// Density sections use the header "x,x_prime,abs_rho".
struct DensitySection {
    std::vector<double> x, x_prime, abs_rho;
    std::string model_id;
};
std::string section_to_csv(const DensitySection& s);
std::string section_to_json(const DensitySection& s);

// Write via temp file + rename in the destination directory.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace decoh::io
