#pragma once

#include <string>
#include <string_view>

#include "qrep/rep.hpp"

namespace qrep {

// Line-oriented text format, '#' starts a comment:
//   quiver <name>
//   vertex <id>
//   arrow <id>: <src> -> <dst>
//   dim <vertex> = <int>
//   mat <arrow> = [[1, 2-0.5j]; [0, 1e-3j]]
// Vertices without a dim line are zero-dimensional; arrows without a mat
// line carry zero matrices. Errors are ParseError with the line number.

Quiver parse_quiver(std::string_view text);  // dim and mat lines are ignored
Rep parse_rep(std::string_view text);
Rep read_rep_file(const std::string& path);

cplx parse_complex(std::string_view literal);
// Rows separated by ';' (or ','), e.g. "[[1, 0]; [0, 1]]"; "[]" is empty.
Mat parse_matrix(std::string_view literal, Eigen::Index rows, Eigen::Index cols);
// Shape taken from the literal; "[]" is 0x0.
Mat parse_matrix(std::string_view literal);

// Shortest form that reads back bit-identically (%.17g parts).
std::string format_complex(cplx z);
std::string format_matrix(const Mat& m);
std::string format_quiver(const Quiver& q);
std::string format_rep(const Rep& r);
// Vertex blocks of a hom as "mat"-style lines keyed by vertex: "map <v> = [...]".
std::string format_hom(const Quiver& q, const std::vector<Mat>& blocks);

}  // namespace qrep
