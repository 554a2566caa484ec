#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "lpls/cmatrix.hpp"

namespace lpls {

// CMAT text format:
//   # optional comment lines
//   %%CMAT <rows> <cols>
//   <re> <im>          (rows * cols lines, row-major)
// Values are written with 17 significant digits so binary64 round-trips
// bitwise.

namespace detail {

[[noreturn]] inline void parse_fail(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

inline bool parse_double(const std::string& tok, double& out) {
    const char* s = tok.c_str();
    char* end = nullptr;
    out = std::strtod(s, &end);
    return end != s && *end == '\0';
}

} // namespace detail

inline CMatrix read_cmat(std::istream& in) {
    std::string line;
    int lineno = 0;

    // Comments may precede the header.
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        break;
    }
    if (lineno == 0) detail::parse_fail(1, "empty file, expected %%CMAT header");

    std::istringstream hdr(line);
    std::string magic;
    long rows = 0, cols = 0;
    hdr >> magic >> rows >> cols;
    if (magic != "%%CMAT" || hdr.fail())
        detail::parse_fail(lineno, "malformed header, expected '%%CMAT <rows> <cols>'");
    std::string extra;
    if (hdr >> extra) detail::parse_fail(lineno, "trailing tokens after header");
    if (rows < 1 || cols < 1)
        detail::parse_fail(lineno, "dimensions must be positive");

    CMatrix a(static_cast<int>(rows), static_cast<int>(cols));
    const long total = rows * cols;
    for (long k = 0; k < total; ++k) {
        if (!std::getline(in, line))
            detail::parse_fail(lineno, "unexpected end of file (" + std::to_string(k) +
                                           " of " + std::to_string(total) +
                                           " value lines read)");
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string tre, tim;
        if (!(ls >> tre >> tim))
            detail::parse_fail(lineno, "expected two numeric tokens '<re> <im>'");
        std::string excess;
        if (ls >> excess) detail::parse_fail(lineno, "trailing tokens after value pair");
        double re = 0.0, im = 0.0;
        if (!detail::parse_double(tre, re))
            detail::parse_fail(lineno, "non-numeric token '" + tre + "'");
        if (!detail::parse_double(tim, im))
            detail::parse_fail(lineno, "non-numeric token '" + tim + "'");
        a(static_cast<int>(k / cols), static_cast<int>(k % cols)) = CScalar(re, im);
    }
    // Only blank or comment lines may follow.
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        detail::parse_fail(lineno, "trailing content after " + std::to_string(total) +
                                       " values");
    }
    return a;
}

inline CMatrix read_cmat(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    try {
        return read_cmat(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_cmat(std::ostream& out, const CMatrix& a) {
    out << "%%CMAT " << a.rows() << ' ' << a.cols() << '\n';
    char buf[64];
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g %.17g\n", a(i, j).real(), a(i, j).imag());
            out << buf;
        }
    }
}

inline void write_cmat(const std::string& path, const CMatrix& a) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    write_cmat(out, a);
    if (!out) throw ParseError("write to '" + path + "' failed");
}

} // namespace lpls
