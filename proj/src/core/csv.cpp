#include "core/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace fpcav {

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    return line;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_number(const std::string& s, const std::string& path, size_t line_no) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::format, path + ":" + std::to_string(line_no) +
                                           ": not a number: '" + s + "'");
    }
}

void check_header(const std::vector<std::string>& got, const std::vector<std::string>& want,
                  const std::string& path) {
    for (const std::string& col : want) {
        bool found = false;
        for (const std::string& g : got)
            if (g == col)
                found = true;
        if (!found)
            throw Error(ErrorCode::format, path + ": missing column '" + col + "' in header");
    }
    if (got.size() != want.size())
        throw Error(ErrorCode::format, path + ": unexpected extra columns in header");
}

} // namespace

Spectrum read_spectrum_csv(const std::string& path, AxisKind axis) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::io, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::format, path + ": empty file");
    check_header(split_csv(strip_cr(line)), {"x", "signal"}, path);

    Spectrum spec;
    spec.axis = axis;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty())
            continue;
        const auto fields = split_csv(line);
        if (fields.size() != 2)
            throw Error(ErrorCode::format,
                        path + ":" + std::to_string(line_no) + ": expected 2 fields");
        spec.x.push_back(parse_number(fields[0], path, line_no));
        spec.signal.push_back(parse_number(fields[1], path, line_no));
    }
    spec.validate();
    return spec;
}

void write_spectrum_csv(const Spectrum& spec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::io, "cannot write " + path);
    out << "x,signal\n";
    char buf[64];
    for (size_t i = 0; i < spec.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", spec.x[i], spec.signal[i]);
        out << buf;
    }
}

SurfaceMap read_surface_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::io, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::format, path + ": empty file");
    check_header(split_csv(strip_cr(line)), {"x_um", "y_um", "z_um"}, path);

    SurfaceMap map;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty())
            continue;
        const auto fields = split_csv(line);
        if (fields.size() != 3)
            throw Error(ErrorCode::format,
                        path + ":" + std::to_string(line_no) + ": expected 3 fields");
        map.x_um.push_back(parse_number(fields[0], path, line_no));
        map.y_um.push_back(parse_number(fields[1], path, line_no));
        map.z_um.push_back(parse_number(fields[2], path, line_no));
    }
    map.validate();
    return map;
}

void write_surface_csv(const SurfaceMap& map, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::io, "cannot write " + path);
    out << "x_um,y_um,z_um\n";
    char buf[96];
    for (size_t i = 0; i < map.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g\n", map.x_um[i], map.y_um[i],
                      map.z_um[i]);
        out << buf;
    }
}

} // namespace fpcav
