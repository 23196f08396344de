/*
 * io.hpp - the polynomial text format.
 *
 * Format:
 *   line 1:           homopoly <n> <d>
 *   subsequent lines: <e1> <e2> ... <en> <coefficient>
 * A '#' begins a comment that runs to the end of the line.  Monomial
 * lines may appear in any order; a duplicate multi-index is an error.
 * Coefficients are written as shortest round-trip decimal literals, so a
 * write/read cycle reproduces every coefficient bit for bit.
 */
#ifndef DISCDIST_IO_HPP
#define DISCDIST_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "discdist/poly.hpp"

namespace discdist {

// Parses the text format.  Throws ParseError with a line number on any
// malformed input, including duplicate multi-indices.
HomogeneousPoly read_poly(std::istream& in);
HomogeneousPoly read_poly(const std::vector<std::string>& lines);
HomogeneousPoly read_poly_file(const std::string& path);

// Serializes p, one line per nonzero coefficient, in basis order.
void write_poly(std::ostream& out, const HomogeneousPoly& p);
std::vector<std::string> write_poly_lines(const HomogeneousPoly& p);
void write_poly_file(const std::string& path, const HomogeneousPoly& p);

// Shortest decimal literal that parses back to exactly x, and its
// inverse.  Exposed because reports and checkpoints reuse them.
std::string format_scalar(double x);
double parse_scalar(const std::string& token);

} // namespace discdist

#endif // DISCDIST_IO_HPP
