#include "discdist/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

#include "discdist/errors.hpp"

namespace discdist {

namespace {

std::string at_line(int lineno) {
    return " (line " + std::to_string(lineno) + ")";
}

// Splits a line into whitespace-separated tokens, dropping '#' comments.
std::vector<std::string> tokenize(const std::string& line) {
    const std::size_t hash = line.find('#');
    std::istringstream ss(hash == std::string::npos ? line
                                                    : line.substr(0, hash));
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return tokens;
}

int parse_int(const std::string& tok, const char* what, int lineno) {
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(std::string("read_poly: bad ") + what + " '" + tok +
                         "'" + at_line(lineno));
    }
    return value;
}

HomogeneousPoly parse_lines(const std::vector<std::string>& raw) {
    int lineno = 0;
    std::size_t pos = 0;

    // Header line, skipping blank/comment lines before it.
    std::vector<std::string> header;
    while (pos < raw.size()) {
        ++lineno;
        header = tokenize(raw[pos++]);
        if (!header.empty()) break;
    }
    if (header.empty()) {
        throw ParseError("read_poly: empty input, expected 'homopoly <n> <d>'");
    }
    if (header.size() != 3 || header[0] != "homopoly") {
        throw ParseError("read_poly: expected header 'homopoly <n> <d>'" +
                         at_line(lineno));
    }
    const int n = parse_int(header[1], "dimension", lineno);
    const int d = parse_int(header[2], "degree", lineno);

    HomogeneousPoly p(n, d);
    std::vector<int> seen_at(static_cast<std::size_t>(p.basis().size()), 0);
    std::vector<int> exponents(static_cast<std::size_t>(n));
    while (pos < raw.size()) {
        ++lineno;
        const std::vector<std::string> tokens = tokenize(raw[pos++]);
        if (tokens.empty()) continue;
        if (tokens.size() != static_cast<std::size_t>(n) + 1) {
            throw ParseError("read_poly: expected " + std::to_string(n) +
                             " exponents and a coefficient, got " +
                             std::to_string(tokens.size()) + " tokens" +
                             at_line(lineno));
        }
        for (int i = 0; i < n; ++i) {
            exponents[static_cast<std::size_t>(i)] =
                parse_int(tokens[static_cast<std::size_t>(i)], "exponent",
                          lineno);
            if (exponents[static_cast<std::size_t>(i)] < 0) {
                throw ParseError("read_poly: negative exponent" +
                                 at_line(lineno));
            }
        }
        const MultiIndex alpha(exponents);
        const int j = p.basis().index_of(alpha);
        if (j < 0) {
            throw ParseError("read_poly: exponents do not sum to the degree " +
                             std::to_string(d) + at_line(lineno));
        }
        if (seen_at[static_cast<std::size_t>(j)] != 0) {
            throw ParseError(
                "read_poly: duplicate multi-index" + at_line(lineno) +
                ", first seen" +
                at_line(seen_at[static_cast<std::size_t>(j)]));
        }
        seen_at[static_cast<std::size_t>(j)] = lineno;
        double c = 0.0;
        try {
            c = parse_scalar(tokens.back());
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()) + at_line(lineno));
        }
        p.coeffs()[j] = c;
    }
    return p;
}

} // namespace

std::string format_scalar(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) {
        throw ParseError("format_scalar: conversion failed");
    }
    return std::string(buf, ptr);
}

double parse_scalar(const std::string& token) {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError("parse_scalar: bad coefficient '" + token + "'");
    }
    return value;
}

HomogeneousPoly read_poly(const std::vector<std::string>& lines) {
    return parse_lines(lines);
}

HomogeneousPoly read_poly(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return parse_lines(lines);
}

HomogeneousPoly read_poly_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("read_poly_file: cannot open '" + path + "'");
    }
    return read_poly(in);
}

std::vector<std::string> write_poly_lines(const HomogeneousPoly& p) {
    std::vector<std::string> lines;
    lines.push_back("homopoly " + std::to_string(p.n()) + " " +
                    std::to_string(p.d()));
    for (int j = 0; j < p.basis().size(); ++j) {
        if (p.coeffs()[j] == 0.0) continue;
        const MultiIndex& alpha = p.basis().alpha(j);
        std::string line;
        for (int i = 0; i < p.n(); ++i) {
            line += std::to_string(alpha[i]);
            line += ' ';
        }
        line += format_scalar(p.coeffs()[j]);
        lines.push_back(std::move(line));
    }
    return lines;
}

void write_poly(std::ostream& out, const HomogeneousPoly& p) {
    for (const std::string& line : write_poly_lines(p)) out << line << '\n';
}

void write_poly_file(const std::string& path, const HomogeneousPoly& p) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("write_poly_file: cannot open '" + path + "'");
    }
    write_poly(out, p);
    out.flush();
    if (!out) {
        throw ParseError("write_poly_file: write to '" + path + "' failed");
    }
}

} // namespace discdist
