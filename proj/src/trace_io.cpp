#include "decoh/trace_io.hpp"

#include <json.hpp>

#include <unistd.h>

#include <cstdio>
#include <fstream>

namespace decoh::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trace_to_csv(const DecoherenceTrace& trace) {
    std::string out = "t,re_F,im_F,abs_F\n";
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        out += format_double(trace.times[i]);
        out += ',';
        out += format_double(trace.values[i].real());
        out += ',';
        out += format_double(trace.values[i].imag());
        out += ',';
        out += format_double(std::abs(trace.values[i]));
        out += '\n';
    }
    return out;
}

std::string trace_to_json(const DecoherenceTrace& trace) {
    // hand-assembled so every number is serialized with 17 significant digits
    std::string out = "{\"model\":\"" + trace.model_id + "\",\"params_digest\":\"" +
                      trace.params_digest + "\",\"trace\":[";
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        if (i) out += ',';
        out += "{\"t\":" + format_double(trace.times[i]) +
               ",\"re_F\":" + format_double(trace.values[i].real()) +
               ",\"im_F\":" + format_double(trace.values[i].imag()) +
               ",\"abs_F\":" + format_double(std::abs(trace.values[i])) + "}";
    }
    out += "]}\n";
    return out;
}

DecoherenceTrace trace_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    DecoherenceTrace trace;
    trace.model_id = j.at("model").get<std::string>();
    trace.params_digest = j.value("params_digest", "");
    for (const auto& rec : j.at("trace")) {
        trace.times.push_back(rec.at("t").get<double>());
        trace.values.emplace_back(rec.at("re_F").get<double>(), rec.at("im_F").get<double>());
    }
    return trace;
}

std::string section_to_csv(const DensitySection& s) {
    std::string out = "x,x_prime,abs_rho\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        out += format_double(s.x[i]);
        out += ',';
        out += format_double(s.x_prime[i]);
        out += ',';
        out += format_double(s.abs_rho[i]);
        out += '\n';
    }
    return out;
}

std::string section_to_json(const DensitySection& s) {
    std::string out = "{\"model\":\"" + s.model_id + "\",\"section\":[";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (i) out += ',';
        out += "{\"x\":" + format_double(s.x[i]) + ",\"x_prime\":" + format_double(s.x_prime[i]) +
               ",\"abs_rho\":" + format_double(s.abs_rho[i]) + "}";
    }
    out += "]}\n";
    return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    std::error_code ec;
    const fs::path tmp = dir / (path.filename().string() + ".tmp" + std::to_string(::getpid()));
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("write_atomic: cannot open " + tmp.string());
        f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!f) throw std::runtime_error("write_atomic: short write to " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("write_atomic: rename failed: " + ec.message());
    }
}

}  // namespace decoh::io
